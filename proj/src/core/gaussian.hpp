#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/field.hpp"
#include "core/rng.hpp"

namespace spde {

// Centred Gaussian measure on mode space with diagonal covariance. mode_std[k]
// is the standard deviation of the full complex amplitude: the Hermitian
// pairing draws Re and Im of u_k as N(0, sigma_k^2/2) so that E|u_k|^2 =
// sigma_k^2 and E||u||_{L2}^2 = sum_k sigma_k^2 (the covariance trace).
class GaussianSpec {
 public:
  GaussianSpec(FourierGrid grid, std::vector<double> mode_std);

  static GaussianSpec from_function(
      const FourierGrid& grid,
      const std::function<double(const std::array<int, 2>&)>& sigma);
  static GaussianSpec white(const FourierGrid& grid, double sigma);

  const FourierGrid& grid() const { return grid_; }
  const std::vector<double>& mode_std() const { return std_; }
  double std_at(std::size_t flat) const { return std_[flat]; }

  double trace() const;          // sum_k sigma_k^2
  double max_variance() const;   // operator norm of the covariance

 private:
  FourierGrid grid_;
  std::vector<double> std_;
};

SpectralField sample(const GaussianSpec& spec, RngStream& rng);

struct SampleEnsemble {
  GaussianSpec spec;
  std::uint64_t seed = 0;
  std::vector<SpectralField> fields;
};

// Reproducible: field i is drawn from the stream (seed, i), so the ensemble is
// identical for any thread count.
SampleEnsemble make_ensemble(const GaussianSpec& spec, std::uint64_t seed,
                             std::size_t count);

// Flat binary layout: header of four little-endian int64 (dim, N, count,
// seed); payload per field, mode-major in row-major flat order, each
// coefficient as little-endian f64 (re, im).
void write_ensemble(const SampleEnsemble& ensemble, const std::string& path);

struct EnsembleFile {
  int dim = 0;
  int modes_per_dim = 0;
  std::uint64_t seed = 0;
  std::vector<SpectralField> fields;
};
EnsembleFile read_ensemble(const std::string& path);

// ( sum_k |h_k|^2 / sigma_k^2 )^{1/2}; +infinity when h charges a dead mode.
double cameron_martin_norm(const GaussianSpec& spec, const SpectralField& h);

struct FerniqueDiagnostic {
  double empirical_mean;  // mean of exp(alpha ||u||^2) over the ensemble
  double alpha_star;      // 1 / (2 max_k sigma_k^2), the convergence threshold
};
FerniqueDiagnostic fernique_diagnostic(const SampleEnsemble& ensemble,
                                       double alpha);

// Paired two-sample comparison of first/second moments of (x,y) against the
// rotated pair (x sin phi + y cos phi, x cos phi - y sin phi); the
// discrepancies are scaled by their own Monte-Carlo standard errors.
struct RotationCheck {
  double max_abs_zscore;
  double max_discrepancy;
};
RotationCheck rotation_invariance_check(const GaussianSpec& spec,
                                        std::uint64_t seed, double phi,
                                        std::size_t n_samples);

// Whitened level statistic (1/M) sum over the first M real coordinates of
// (x_j/sigma_j)^2 for one draw x from the dilated-by-c measure; concentrates
// at c^2 as M grows, which is what makes the dilates mutually singular.
double dilate_singularity_diagnostic(const GaussianSpec& spec, double c,
                                     std::size_t n_modes, RngStream& rng);

// Regression estimate of the Holder exponent from second moments of dyadic
// increments: slope of log2 E|X(x)-X(y)|^2 against log2|x-y| equals 2 alpha.
// Paths are sampled on the uniform dyadic grid of [0,1] (size 2^L + 1).
struct HolderEstimate {
  double exponent;
  double std_error;
  int levels_used;
};
HolderEstimate holder_exponent_estimate(const std::vector<std::vector<double>>& paths,
                                        int level_min, int level_max);

}  // namespace spde
