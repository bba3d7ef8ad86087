#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "core/linear.hpp"
#include "core/transform.hpp"

namespace spde {

enum class NonlinearityKind { None, PolynomialReaction, NavierStokesVorticity };

// dx = Lx dt + F(x) dt + Q dW in mild form, integrated by exponential Euler
// with the exact stochastic-convolution increment (the scheme is exact when
// F = 0).
struct SemilinearProblem {
  FourierGrid grid;
  std::vector<double> lambda;           // generator symbol is -lambda_k
  std::vector<double> q;                // noise amplitude per mode
  NonlinearityKind kind = NonlinearityKind::None;
  std::vector<double> reaction_coeffs;  // f(u) = sum_j c_j u^j, degree <= 5
  double viscosity = 1.0;               // NS only
  SpectralField init;
  double dt = 1e-2;
  double t_end = 1.0;

  void validate() const;

  // du = nu Laplace u dt + f(u) dt + Q dW on T^d.
  static SemilinearProblem reaction(const FourierGrid& grid, double nu,
                                    std::vector<double> coeffs,
                                    std::vector<double> q, SpectralField init,
                                    double dt, double t_end);

  // Vorticity form of the 2-D stochastic Navier-Stokes equations,
  // dw = nu Laplace w dt - (Kw . grad) w dt + Q dW, zero-mean state.
  static SemilinearProblem navier_stokes(int modes_per_dim, double nu,
                                         std::vector<double> q, SpectralField init_w,
                                         double dt, double t_end);
};

// f o u for a polynomial f via chained dealiased products. Degree > 5 is
// rejected (aliasing budget of the chained-product construction).
SpectralField reaction_nonlinearity(const SpectralField& u,
                                    const std::vector<double>& coeffs);

// Vorticity transport -(Kw . grad) w with spectral gradient and dealiased
// products; output has exactly zero mean. Galerkin truncation plus exact
// dealiasing preserves <w, F(w)> = 0.
SpectralField ns_vorticity_nonlinearity(const SpectralField& w);

enum class ConvexV { None, Square, CoshMinusOne };

struct MonitorConfig {
  ConvexV v_kind = ConvexV::None;
  bool ns_energy = false;
  double blowup_ceiling = 1e8;
  int record_every = 1;
};

struct RunMonitor {
  std::vector<double> times;
  std::vector<double> sup_norms;
  std::vector<double> l2_norms;
  std::vector<double> v_tilde;          // sup_x V(v(x)), v = u - W_L
  std::vector<double> energy;           // NS: ||Kw||^2
  std::vector<double> enstrophy;        // NS: ||w||^2
  std::vector<double> orth_residual;    // NS: |<w,F(w)>| / (||w|| ||F(w)||)
  std::vector<double> energy_lhs;       // d/dt ||v||^2, discrete
  std::vector<double> energy_rhs;       // Gronwall right-hand side + slack
  std::vector<double> enstrophy_rate;   // per step d/dt ||w||^2 (ns_energy)
  std::vector<double> grad_enstrophy;   // per step ||grad w||^2 (ns_energy)
  bool energy_inequality_ok = true;
  double max_mean_abs = 0.0;            // NS: largest |mean(w)| seen
  double max_divergence_defect = 0.0;   // NS: largest |<k,u_k>| / ||u||
  bool gronwall_flag = false;           // convexity monitor violation
  double gronwall_constant = 0.0;
  double sup_wl = 0.0;                  // recorded sup norm of W_L
  bool blew_up = false;
  double blowup_time = std::numeric_limits<double>::infinity();
};

struct RunResult {
  SpectralField state;
  RunMonitor monitor;
};

// Exponential Euler: per mode x <- e^{-lambda dt} x + phi1(-lambda dt) dt F_k
// + eta_k with eta the exact OU convolution increment; phi1(z) = (e^z - 1)/z.
class ExponentialEuler {
 public:
  explicit ExponentialEuler(const SemilinearProblem& p);

  SpectralField nonlinearity(const SpectralField& x) const;
  SpectralField draw_noise(RngStream& rng) const;
  void step_with_noise(SpectralField& x, const SpectralField& eta) const;
  // variant with the drift term already evaluated at the current state
  void step_precomputed(SpectralField& x, const SpectralField& f,
                        const SpectralField& eta) const;
  void step(SpectralField& x, RngStream& rng) const;
  // advances the pure stochastic convolution by the same increment
  void convolve_noise(SpectralField& w_l, const SpectralField& eta) const;

  const SemilinearProblem& problem() const { return p_; }

 private:
  const SemilinearProblem& p_;
  std::vector<double> decay_;
  std::vector<double> phi1_dt_;
  std::vector<double> noise_std_;  // std of the full complex increment
};

RunResult run(const SemilinearProblem& p, const MonitorConfig& config,
              std::uint64_t seed);

// sup_{x, |y| <= radius} <V'(x), f(x+y)> / (1 + V(x)): the Gronwall rate the
// convexity monitor checks the run against.
double gronwall_constant(const std::vector<double>& coeffs, ConvexV v,
                         double radius);

// Mean L2 distance at t_end between the dt and dt/2 integrations driven by
// the same Brownian path (increments drawn at the fine level and folded).
double strong_refinement_error(const SemilinearProblem& p, std::size_t n_paths,
                               std::uint64_t seed);

}  // namespace spde
