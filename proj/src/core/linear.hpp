#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/gaussian.hpp"
#include "core/stochastic.hpp"

namespace spde {

// dx = Lx dt + Q dW with diagonal L (symbol -lambda_k) and diagonal Q
// (amplitude q_k). The per-mode exact OU transition makes every sampler here
// free of time-discretization error.
struct LinearProblem {
  FourierGrid grid;
  std::vector<double> lambda;  // lambda_k >= 0
  std::vector<double> q;       // q_k >= 0
  std::optional<SpectralField> init_field;  // zero when absent
  std::optional<GaussianSpec> init_spec;    // random initial condition

  void validate() const;
  bool dissipative() const;  // no undamped noisy mode

  // d=1 heat equation on a circle of circumference 2*pi*radius carrying
  // physical space-time white noise, plus optional damping a:
  // lambda_k = nu k^2 / radius^2 + a, q_k = 1/sqrt(2 pi radius).
  static LinearProblem heat_equation(int modes_per_dim, double radius,
                                     double damping = 0.0, double nu = 1.0);
};

// Exact sampling of the joint law at increasing times.
std::vector<SpectralField> evolve_exact(const LinearProblem& p,
                                        const std::vector<double>& times,
                                        RngStream& rng);

// Point observable u(t_i, x = 0): evolves only the real parts of the
// positive-half modes, which determine the field at the origin.
std::vector<double> evolve_point_at_origin(const LinearProblem& p,
                                           const std::vector<double>& times,
                                           RngStream& rng);

// One-shot exact draw of the time-t marginal (no chaining needed).
SpectralField sample_at_time(const LinearProblem& p, double t, RngStream& rng);

// Marginal per-mode mean/variance of x_k(t) started from the fixed initial
// condition (zero when unset).
void marginal_moments(const LinearProblem& p, double t, std::size_t flat,
                      Complex* mean, double* variance);

// Full-line d=1 stochastic heat equation temporal covariance at x = 0:
// E u(s,0) u(t,0) = (sqrt(s+t) - sqrt|s-t|)/2.
double heat_time_covariance_target(double s, double t);

struct CovarianceEntry {
  std::string name;
  double empirical = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  bool pass = false;
};

struct CovarianceReport {
  std::vector<CovarianceEntry> entries;
  bool all_pass() const;
};

struct HeatCovarianceResult {
  CovarianceReport report;
  double structure_slope = 0.0;   // log-log slope of E|u(s,0)-u(t,0)|^2
  double slope_target = 0.5;
};

// Simulates du = u_xx dt + dW(space-time white) on a torus large enough that
// wrap-around is below 1e-6, then compares E u(s,0)u(t,0) on the requested
// pairs against the full-line target, and fits the structure-function slope
// over the given separations from s_base.
HeatCovarianceResult verify_heat_covariance(int modes_per_dim, double radius,
                                            double s_base,
                                            const std::vector<double>& deltas,
                                            std::size_t n_samples,
                                            std::uint64_t seed);

// Stationary covariance of du = u_xx - a u + xi on the line:
// lim E u(t,x)u(t,y) = C e^{-c|x-y|} with C = 1/(4 sqrt a), c = sqrt a.
double ou_limit_target(double a, double r);

struct OuLimitResult {
  CovarianceReport report;
  double c_fit = 0.0;       // fitted prefactor C
  double rate_fit = 0.0;    // fitted decay rate c
};

OuLimitResult verify_ou_limit(double a, int modes_per_dim, double radius,
                              double t_relax_multiplier, std::size_t n_samples,
                              std::uint64_t seed);

// sigma_k^2 = q_k^2 / (2 lambda_k); refuses non-dissipative noisy problems,
// whose truncation carries no invariant measure.
GaussianSpec invariant_covariance(const LinearProblem& p);

// max over probe fields of |2 Re<Q_inf L* x, x> + ||Q* x||^2| / ||x||^2;
// zero (to rounding) exactly at the stationary covariance.
double lyapunov_identity_residual(const LinearProblem& p, const GaussianSpec& q_inf,
                                  const std::vector<SpectralField>& probes);

struct RegularityRow {
  int modes_per_dim;
  double mean_sq_norm;   // empirical E ||x||_{H^s}^2
  double std_error;
};

struct RegularityReport {
  double s = 0.0;
  std::vector<RegularityRow> rows;
  bool saturating = false;  // increments shrink under refinement
  bool growing = false;     // monotone growth by more than noise
  double time_holder_exponent = 0.0;
  double time_holder_std_error = 0.0;
};

// d=1 heat-type problem lambda_k = 1 + k^2, q_k = (1+k^2)^{-alpha}. Reports
// E||x||_{H^s}^2 across refinements of the mode cutoff and estimates the
// Holder exponent of t -> x(t) in L2 from dyadic increments.
RegularityReport regularity_report(double alpha, double s,
                                   const std::vector<int>& mode_counts,
                                   std::size_t n_samples, std::uint64_t seed,
                                   bool estimate_time_holder = true);

// Trajectory stored together with its driving noise (jointly exact sampling).
struct StoredTrajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;
  std::vector<SpectralField> wiener;  // cumulative W(t_n)
};

StoredTrajectory evolve_with_increments(const LinearProblem& p, double t_end,
                                        std::size_t n_steps, RngStream& rng);

// max over modes of |x_k(T) - x_k(0) + lambda_k int x_k dt - q_k W_k(T)| with
// the time integral by trapezoid; measures quadrature error only, so it is
// O(dt) under refinement.
double weak_form_residual(const LinearProblem& p, const StoredTrajectory& traj);

}  // namespace spde
