#pragma once

#include <cstdint>
#include <vector>

#include "core/gaussian.hpp"
#include "core/rng.hpp"
#include "core/spectral_ops.hpp"

namespace spde {

// Exact transition variance of dx = -lambda x dt + q dW over a step dt:
// q^2 (1 - e^{-2 lambda dt}) / (2 lambda), continuous limit q^2 dt at
// lambda = 0 so undamped modes never divide by zero.
double ou_noise_variance(double lambda, double q, double dt);

// One exact Ornstein-Uhlenbeck transition for a real coordinate (noise
// variance v) and for a paired complex mode (E|eta|^2 = v, Re/Im of variance
// v/2 each, matching the sampling convention of GaussianSpec).
double ou_step_real(double x, double lambda, double q, double dt, RngStream& rng);
Complex ou_step_complex(Complex x, double lambda, double q, double dt,
                        RngStream& rng);

// Joint exact transition of (x, W): the stochastic-convolution increment and
// the plain Wiener increment over one step are correlated Gaussians with
// Cov = q (1 - e^{-lambda dt}) / lambda. Sampling them together keeps a
// stored trajectory pathwise consistent with its driving noise, which the
// weak-form residual check needs.
struct OuJointCoeffs {
  double decay;       // e^{-lambda dt}
  double w_var;       // dt
  double cross_coef;  // Cov / Var(dW)
  double cond_var;    // Var(eta | dW)
};
OuJointCoeffs ou_joint_coeffs(double lambda, double q, double dt);

// Cylindrical Wiener increments on the mode space: each increment is a white
// field with E|dW_k|^2 = dt for every retained mode. Single-owner stream.
class WienerIncrementStream {
 public:
  WienerIncrementStream(FourierGrid grid, double dt, std::uint64_t seed,
                        std::uint64_t stream_id = 0);

  SpectralField draw_increment();
  const FourierGrid& grid() const { return grid_; }
  double dt() const { return dt_; }
  std::uint64_t steps_drawn() const { return counter_; }

  RngStream& rng() { return rng_; }

 private:
  FourierGrid grid_;
  double dt_;
  RngStream rng_;
  std::uint64_t counter_ = 0;
};

// White-in-space increment with variance dt, shared by stream and integrals.
SpectralField wiener_increment(const FourierGrid& grid, double dt, RngStream& rng);

// Elementary (step) process: constant diagonal operator on each interval
// (t_n, t_{n+1}]. Only deterministic integrands are supported.
class StepProcess {
 public:
  StepProcess(std::vector<double> breakpoints, std::vector<DiagonalOperator> ops);

  std::size_t intervals() const { return ops_.size(); }
  double t(std::size_t i) const { return breakpoints_[i]; }
  const DiagonalOperator& op(std::size_t i) const { return ops_[i]; }
  const FourierGrid& grid() const { return ops_.front().grid(); }

 private:
  std::vector<double> breakpoints_;
  std::vector<DiagonalOperator> ops_;
};

// sum_n Phi_n (W(t_{n+1}) - W(t_n)).
SpectralField ito_integral(const StepProcess& phi, RngStream& rng);

// || integral Phi dW ||^2 with the same law as ito_integral(...).l2_norm_sq()
// but no field allocations; this is the Monte-Carlo inner loop.
double ito_integral_norm_sq(const StepProcess& phi, RngStream& rng);

// sum_n tr(Phi_n Phi_n^*) (t_{n+1} - t_n), the Ito isometry target for
// E || integral Phi dW ||^2.
double ito_isometry_target(const StepProcess& phi);

// B(t_j) on the uniform grid j*T/n, with B(0) = 0 exactly.
std::vector<double> brownian_from_white_noise(double t_end, std::size_t n_steps,
                                              RngStream& rng);

}  // namespace spde
