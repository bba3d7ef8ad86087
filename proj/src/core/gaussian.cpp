#include "core/gaussian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <stdexcept>

#include "core/parallel.hpp"

namespace spde {

GaussianSpec::GaussianSpec(FourierGrid grid, std::vector<double> mode_std)
    : grid_(grid), std_(std::move(mode_std)) {
  if (std_.size() != grid_.mode_count())
    throw std::invalid_argument("GaussianSpec: mode_std size mismatch");
  for (std::size_t i = 0; i < std_.size(); ++i) {
    if (std_[i] < 0.0)
      throw std::invalid_argument("GaussianSpec: negative mode std");
    if (std::abs(std_[i] - std_[grid_.negate(i)]) > 1e-14 * (1.0 + std_[i]))
      throw std::invalid_argument("GaussianSpec: mode_std must satisfy sigma_{-k} = sigma_k");
  }
}

GaussianSpec GaussianSpec::from_function(
    const FourierGrid& grid,
    const std::function<double(const std::array<int, 2>&)>& sigma) {
  std::vector<double> s(grid.mode_count());
  for (std::size_t i = 0; i < grid.mode_count(); ++i) s[i] = sigma(grid.wavenumber(i));
  return GaussianSpec(grid, std::move(s));
}

GaussianSpec GaussianSpec::white(const FourierGrid& grid, double sigma) {
  return GaussianSpec(grid, std::vector<double>(grid.mode_count(), sigma));
}

double GaussianSpec::trace() const {
  double t = 0.0;
  for (double s : std_) t += s * s;
  return t;
}

double GaussianSpec::max_variance() const {
  double m = 0.0;
  for (double s : std_) m = std::max(m, s * s);
  return m;
}

SpectralField sample(const GaussianSpec& spec, RngStream& rng) {
  const auto& g = spec.grid();
  SpectralField u(g);
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    const double sigma = spec.std_at(i);
    if (g.is_zero_mode(i)) {
      u.at(i) = Complex(rng.normal(sigma), 0.0);
    } else if (g.positive_half(i)) {
      const double half = sigma / std::sqrt(2.0);
      const Complex z(rng.normal(half), rng.normal(half));
      u.at(i) = z;
      u.at(g.negate(i)) = std::conj(z);
    }
  }
  return u;
}

SampleEnsemble make_ensemble(const GaussianSpec& spec, std::uint64_t seed,
                             std::size_t count) {
  SampleEnsemble e{spec, seed, {}};
  e.fields.assign(count, SpectralField(spec.grid()));
  parallel_chunks(count, 64, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      RngStream rng(seed, i);
      e.fields[i] = sample(spec, rng);
    }
  });
  return e;
}

namespace {

void put_u64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

void put_f64(std::string& out, double x) {
  put_u64(out, std::bit_cast<std::uint64_t>(x));
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  return v;
}

double get_f64(const unsigned char* p) {
  return std::bit_cast<double>(get_u64(p));
}

}  // namespace

void write_ensemble(const SampleEnsemble& ensemble, const std::string& path) {
  std::string buf;
  const auto& g = ensemble.spec.grid();
  buf.reserve(32 + ensemble.fields.size() * g.mode_count() * 16);
  put_u64(buf, static_cast<std::uint64_t>(g.dim()));
  put_u64(buf, static_cast<std::uint64_t>(g.modes_per_dim()));
  put_u64(buf, static_cast<std::uint64_t>(ensemble.fields.size()));
  put_u64(buf, ensemble.seed);
  for (const auto& f : ensemble.fields) {
    for (std::size_t i = 0; i < g.mode_count(); ++i) {
      put_f64(buf, f.at(i).real());
      put_f64(buf, f.at(i).imag());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("write_ensemble: cannot open " + path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

EnsembleFile read_ensemble(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_ensemble: cannot open " + path);
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (buf.size() < 32) throw std::runtime_error("read_ensemble: truncated header");
  const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
  EnsembleFile file;
  file.dim = static_cast<int>(get_u64(p));
  file.modes_per_dim = static_cast<int>(get_u64(p + 8));
  const std::size_t count = get_u64(p + 16);
  file.seed = get_u64(p + 24);
  const FourierGrid grid(file.dim, file.modes_per_dim);
  const std::size_t need = 32 + count * grid.mode_count() * 16;
  if (buf.size() != need) throw std::runtime_error("read_ensemble: size mismatch");
  std::size_t off = 32;
  file.fields.assign(count, SpectralField(grid));
  for (std::size_t f = 0; f < count; ++f)
    for (std::size_t i = 0; i < grid.mode_count(); ++i) {
      file.fields[f].at(i) = Complex(get_f64(p + off), get_f64(p + off + 8));
      off += 16;
    }
  return file;
}

double cameron_martin_norm(const GaussianSpec& spec, const SpectralField& h) {
  if (spec.grid() != h.grid())
    throw std::invalid_argument("cameron_martin_norm: grid mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < h.modes(); ++i) {
    const double a2 = std::norm(h.at(i));
    const double sigma = spec.std_at(i);
    if (sigma == 0.0) {
      if (a2 > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    acc += a2 / (sigma * sigma);
  }
  return std::sqrt(acc);
}

FerniqueDiagnostic fernique_diagnostic(const SampleEnsemble& ensemble,
                                       double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("fernique_diagnostic: alpha >= 0");
  double acc = 0.0;
  for (const auto& f : ensemble.fields) acc += std::exp(alpha * f.l2_norm_sq());
  const double mean =
      ensemble.fields.empty() ? 1.0 : acc / static_cast<double>(ensemble.fields.size());
  const double alpha_star = 1.0 / (2.0 * ensemble.spec.max_variance());
  return {mean, alpha_star};
}

RotationCheck rotation_invariance_check(const GaussianSpec& spec,
                                        std::uint64_t seed, double phi,
                                        std::size_t n_samples) {
  const auto& g = spec.grid();
  // Probe coordinates: real and imaginary parts of the first few active modes.
  std::vector<std::size_t> probes;
  for (std::size_t i = 0; i < g.mode_count() && probes.size() < 16; ++i)
    if ((g.positive_half(i) || g.is_zero_mode(i)) && spec.std_at(i) > 0.0)
      probes.push_back(i);
  const std::size_t p = probes.size();
  // Moments per probe: first moments of both pair members, second moments and
  // the cross moment, for Re parts (Im behaves identically by symmetry).
  const std::size_t n_mom = 5 * p;
  std::vector<double> sum_d(n_mom, 0.0), sum_d2(n_mom, 0.0);

  const double s = std::sin(phi), c = std::cos(phi);
  for (std::size_t n = 0; n < n_samples; ++n) {
    RngStream rng(seed, n);
    const SpectralField x = sample(spec, rng);
    const SpectralField y = sample(spec, rng);
    for (std::size_t j = 0; j < p; ++j) {
      const double a = x.at(probes[j]).real();
      const double b = y.at(probes[j]).real();
      const double ar = a * s + b * c;
      const double br = a * c - b * s;
      const double d[5] = {ar - a, br - b, ar * ar - a * a, br * br - b * b,
                           ar * br - a * b};
      for (int m = 0; m < 5; ++m) {
        sum_d[5 * j + m] += d[m];
        sum_d2[5 * j + m] += d[m] * d[m];
      }
    }
  }
  RotationCheck out{0.0, 0.0};
  const double n = static_cast<double>(n_samples);
  for (std::size_t m = 0; m < n_mom; ++m) {
    const double mean = sum_d[m] / n;
    const double var = std::max(0.0, sum_d2[m] / n - mean * mean);
    const double se = std::sqrt(var / n);
    out.max_discrepancy = std::max(out.max_discrepancy, std::abs(mean));
    if (se > 0.0)
      out.max_abs_zscore = std::max(out.max_abs_zscore, std::abs(mean) / se);
    else if (mean != 0.0)
      out.max_abs_zscore = std::numeric_limits<double>::infinity();
  }
  return out;
}

double dilate_singularity_diagnostic(const GaussianSpec& spec, double c,
                                     std::size_t n_modes, RngStream& rng) {
  const auto& g = spec.grid();
  const SpectralField x = sample(spec, rng);
  double acc = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < g.mode_count() && used < n_modes; ++i) {
    const double sigma = spec.std_at(i);
    if (g.is_zero_mode(i)) {
      if (sigma == 0.0)
        throw std::invalid_argument("dilate diagnostic: probed mode has sigma = 0");
      const double z = c * x.at(i).real() / sigma;
      acc += z * z;
      ++used;
    } else if (g.positive_half(i)) {
      if (sigma == 0.0)
        throw std::invalid_argument("dilate diagnostic: probed mode has sigma = 0");
      const double half = sigma / std::sqrt(2.0);
      const double za = c * x.at(i).real() / half;
      const double zb = c * x.at(i).imag() / half;
      acc += za * za;
      ++used;
      if (used < n_modes) {
        acc += zb * zb;
        ++used;
      }
    }
  }
  if (used < n_modes)
    throw std::invalid_argument("dilate diagnostic: not enough active modes");
  return acc / static_cast<double>(n_modes);
}

HolderEstimate holder_exponent_estimate(const std::vector<std::vector<double>>& paths,
                                        int level_min, int level_max) {
  if (level_max - level_min + 1 < 3)
    throw std::invalid_argument("holder estimate: need at least 3 dyadic levels");
  if (paths.size() < 100)
    throw std::invalid_argument("holder estimate: need at least 100 paths");
  const std::size_t n_points = paths.front().size();
  // n_points = 2^L + 1 on [0,1]
  int big_l = 0;
  while ((std::size_t(1) << (big_l + 1)) + 1 <= n_points) ++big_l;
  if ((std::size_t(1) << big_l) + 1 != n_points)
    throw std::invalid_argument("holder estimate: paths must have 2^L + 1 points");
  if (level_max > big_l)
    throw std::invalid_argument("holder estimate: level exceeds path resolution");

  std::vector<double> xs, ys;
  for (int lev = level_min; lev <= level_max; ++lev) {
    const std::size_t stride = std::size_t(1) << (big_l - lev);
    double acc = 0.0;
    std::size_t cnt = 0;
    for (const auto& path : paths) {
      if (path.size() != n_points)
        throw std::invalid_argument("holder estimate: ragged paths");
      for (std::size_t i = 0; i + stride < n_points; i += stride) {
        const double d = path[i + stride] - path[i];
        acc += d * d;
        ++cnt;
      }
    }
    xs.push_back(-static_cast<double>(lev));  // log2 separation
    ys.push_back(std::log2(acc / static_cast<double>(cnt)));
  }

  // least squares y = a + b x; slope b = 2 alpha
  const std::size_t m = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / m;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ss_res += r * r;
  }
  const double slope_var =
      m > 2 ? ss_res / static_cast<double>(m - 2) * m / denom : 0.0;
  return {slope / 2.0, std::sqrt(std::max(0.0, slope_var)) / 2.0,
          static_cast<int>(m)};
}

}  // namespace spde
