#pragma once

#include <cstdint>
#include <vector>

#include "core/linear.hpp"

namespace spde {

// Finite-state Markov kernel with a Lyapunov function. Gaussian AR(1)
// transition kernels are discretized onto a bounded lattice with the tail
// mass folded into the boundary states, so everything downstream is exact
// finite arithmetic.
struct MarkovModel {
  std::vector<std::vector<double>> p;  // row-stochastic matrix
  std::vector<double> v;               // V >= 0 per state
  std::vector<double> states;          // lattice coordinates; empty if abstract
  double step_time = 1.0;

  std::size_t size() const { return p.size(); }
  void validate() const;

  static MarkovModel finite(std::vector<std::vector<double>> p,
                            std::vector<double> v);
  // x -> N(a x, s^2) on n lattice points spanning [lo, hi], V(x) = x^2.
  static MarkovModel gaussian_ar1(double a, double s, double lo, double hi,
                                  int n);
};

std::vector<double> apply_kernel(const MarkovModel& m,
                                 const std::vector<double>& phi);  // P phi

// Drift pair for P V <= gamma V + K: gamma is the P V / V ratio at the top
// level set of V (the tightest slope where V is large), rounded up to the
// 0.01 search grid in [0.01, 0.99]; K = max(PV - gamma V)_+. Fails when the
// top ratio reaches 1.
struct DriftResult {
  bool ok = false;
  double gamma = 0.0;
  double k = 0.0;
};
DriftResult drift_constants(const MarkovModel& m);

// delta = 2 - max TV(P(x,.), P(y,.)) over pairs with V(x)+V(y) <= k_prime;
// TV is the L1 distance of the rows (range [0,2]).
double small_set_delta(const MarkovModel& m, double k_prime);

struct HarrisCertificate {
  double gamma = 0.0;
  double k = 0.0;
  double level_k_prime = 0.0;  // (2K+2)/(1-gamma)
  double delta = 0.0;
  double beta = 0.0;           // half of the admissible supremum
  double alpha1 = 0.0;
  double alpha = 0.0;          // max(alpha1, 1 - delta/2)
  bool validated = false;

  std::string to_text() const;               // flat key = value serialization
  static HarrisCertificate from_text(const std::string& text);
};

HarrisCertificate make_certificate(double gamma, double k, double delta);

double d_beta_distance(const MarkovModel& m, std::size_t x, std::size_t y,
                       double beta);
double lip_beta_seminorm(const MarkovModel& m, const std::vector<double>& phi,
                         double beta);
// ||phi||_{beta V} = max_x |phi(x)| / (1 + beta V(x)).
double weighted_v_norm(const MarkovModel& m, const std::vector<double>& phi,
                       double beta);
// inf_c ||phi + c||_{beta V}, the dual characterization of the Lipschitz
// seminorm; evaluated by 1-D convex minimization over c.
double lip_via_infimum(const MarkovModel& m, const std::vector<double>& phi,
                       double beta);

std::vector<double> stationary_distribution(const MarkovModel& m);

// ||mu - nu||_{TV,V} = sum (1+V) |mu - nu|.
double weighted_tv(const MarkovModel& m, const std::vector<double>& mu,
                   const std::vector<double>& nu);

struct ContractionResult {
  double c_hat = 0.0;   // exact one-step Lip_beta contraction factor
  bool pass = false;    // c_hat <= alpha
  std::size_t witness_x = 0, witness_y = 0;
  std::vector<double> tvv_decay;  // ||P^n delta_x - pi||_{TV,V}
};

// The one-step contraction is computed exactly through the duality
// sup_{||phi||_{Lip_beta} <= 1} |P phi(x) - P phi(y)|
//   = sum_z (1 + beta V(z)) |P(x,z) - P(y,z)|,
// the weighted-TV form of the row difference (optimal phi is the signed
// indicator scaled by 1 + beta V).
ContractionResult contraction_verify(const MarkovModel& m,
                                     const HarrisCertificate& cert,
                                     int n_steps);

// ||N(0,1) - N(m,1)||_TV, exactly 2(2 Phi(m/2) - 1), and the coupling lower
// bound 2 - 2 e^{-m^2/8} it always dominates.
double gaussian_tv_distance(double m);
double gaussian_tv_lower_bound(double m);

// Two-sided stationarity check of a dissipative linear problem: started at
// zero and at a large fixed field, per-mode variances must agree with
// q^2/(2 lambda) within 3 MC standard errors after the burn-in, and the
// means must follow the exact e^{-lambda t} decay.
CovarianceReport empirical_invariant_check(const LinearProblem& p,
                                           std::size_t n_samples, double t_burn,
                                           std::uint64_t seed);

}  // namespace spde
