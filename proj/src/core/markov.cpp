#include "core/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "core/parallel.hpp"

namespace spde {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

void MarkovModel::validate() const {
  if (p.empty() || v.size() != p.size())
    throw std::invalid_argument("MarkovModel: shape mismatch");
  for (const auto& row : p) {
    if (row.size() != p.size())
      throw std::invalid_argument("MarkovModel: non-square kernel");
    double sum = 0.0;
    for (double x : row) {
      if (x < -1e-15) throw std::invalid_argument("MarkovModel: negative entry");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("MarkovModel: row does not sum to 1");
  }
  for (double x : v)
    if (x < 0.0) throw std::invalid_argument("MarkovModel: V must be >= 0");
}

MarkovModel MarkovModel::finite(std::vector<std::vector<double>> p,
                                std::vector<double> v) {
  MarkovModel m{std::move(p), std::move(v), {}, 1.0};
  m.validate();
  return m;
}

MarkovModel MarkovModel::gaussian_ar1(double a, double s, double lo, double hi,
                                      int n) {
  if (n < 3 || hi <= lo) throw std::invalid_argument("gaussian_ar1: bad lattice");
  if (s <= 0.0) throw std::invalid_argument("gaussian_ar1: s > 0");
  MarkovModel m;
  m.states.resize(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) m.states[i] = lo + h * i;
  m.v.resize(n);
  for (int i = 0; i < n; ++i) m.v[i] = m.states[i] * m.states[i];
  m.p.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    const double mean = a * m.states[i];
    for (int j = 0; j < n; ++j) {
      const double left = j == 0 ? -std::numeric_limits<double>::infinity()
                                 : (m.states[j] - 0.5 * h - mean) / s;
      const double right = j == n - 1 ? std::numeric_limits<double>::infinity()
                                      : (m.states[j] + 0.5 * h - mean) / s;
      const double cl = std::isinf(left) ? 0.0 : normal_cdf(left);
      const double cr = std::isinf(right) ? 1.0 : normal_cdf(right);
      m.p[i][j] = cr - cl;
    }
  }
  m.validate();
  return m;
}

std::vector<double> apply_kernel(const MarkovModel& m,
                                 const std::vector<double>& phi) {
  const std::size_t n = m.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += m.p[i][j] * phi[j];
    out[i] = acc;
  }
  return out;
}

DriftResult drift_constants(const MarkovModel& m) {
  m.validate();
  const auto pv = apply_kernel(m, m.v);
  const double v_max = *std::max_element(m.v.begin(), m.v.end());
  DriftResult r;
  if (v_max == 0.0) {
    r.ok = true;
    r.gamma = 0.5;
    r.k = *std::max_element(pv.begin(), pv.end());
    return r;
  }
  double top_ratio = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.v[i] == v_max) top_ratio = std::max(top_ratio, pv[i] / m.v[i]);
  if (top_ratio >= 0.995) return r;  // no gamma < 1 on the grid works
  r.gamma = std::clamp(std::ceil(top_ratio * 100.0) / 100.0, 0.01, 0.99);
  double k = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    k = std::max(k, pv[i] - r.gamma * m.v[i]);
  r.k = k;
  r.ok = true;
  return r;
}

double small_set_delta(const MarkovModel& m, double k_prime) {
  m.validate();
  double worst_tv = -1.0;
  for (std::size_t x = 0; x < m.size(); ++x) {
    for (std::size_t y = x + 1; y < m.size(); ++y) {
      if (m.v[x] + m.v[y] > k_prime) continue;
      double tv = 0.0;
      for (std::size_t z = 0; z < m.size(); ++z)
        tv += std::abs(m.p[x][z] - m.p[y][z]);
      worst_tv = std::max(worst_tv, tv);
    }
  }
  if (worst_tv < 0.0) {
    bool any = false;
    for (std::size_t x = 0; x < m.size() && !any; ++x)
      any = 2.0 * m.v[x] <= k_prime;
    if (!any) throw std::invalid_argument("small_set_delta: empty level set");
    worst_tv = 0.0;  // only diagonal pairs in the level set
  }
  return 2.0 - worst_tv;
}

HarrisCertificate make_certificate(double gamma, double k, double delta) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("make_certificate: gamma in (0,1)");
  if (!(k > 0.0)) throw std::invalid_argument("make_certificate: K > 0");
  if (!(delta > 0.0 && delta <= 2.0))
    throw std::invalid_argument("make_certificate: delta in (0,2]");
  HarrisCertificate c;
  c.gamma = gamma;
  c.k = k;
  c.delta = delta;
  c.level_k_prime = (2.0 * k + 2.0) / (1.0 - gamma);
  const double beta_sup = (delta / (4.0 * k)) * (1.0 - gamma) / (1.0 + gamma);
  c.beta = 0.5 * beta_sup;
  // The drift-branch ratio at the level threshold is
  // 1 - beta (1-gamma) / (1-gamma+beta K+beta); the 1/2 coefficient quoted
  // with the proof only dominates it for gamma <= 1/2, so the smaller of the
  // two coefficients is used. At gamma = 1/2 they coincide.
  const double coef = std::min(0.5, 1.0 - gamma);
  c.alpha1 = 1.0 - coef * c.beta / (1.0 - gamma + c.beta * k + c.beta);
  c.alpha = std::max(c.alpha1, 1.0 - 0.5 * delta);
  c.validated = c.beta > 0.0 && c.beta < beta_sup && c.alpha < 1.0;
  return c;
}

std::string HarrisCertificate::to_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "gamma = " << gamma << "\n"
     << "K = " << k << "\n"
     << "K_prime = " << level_k_prime << "\n"
     << "delta = " << delta << "\n"
     << "beta = " << beta << "\n"
     << "alpha1 = " << alpha1 << "\n"
     << "alpha = " << alpha << "\n"
     << "validated = " << (validated ? 1 : 0) << "\n";
  return os.str();
}

HarrisCertificate HarrisCertificate::from_text(const std::string& text) {
  HarrisCertificate c;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    key.erase(std::remove_if(key.begin(), key.end(), ::isspace), key.end());
    const double val = std::stod(line.substr(eq + 1));
    if (key == "gamma") c.gamma = val;
    else if (key == "K") c.k = val;
    else if (key == "K_prime") c.level_k_prime = val;
    else if (key == "delta") c.delta = val;
    else if (key == "beta") c.beta = val;
    else if (key == "alpha1") c.alpha1 = val;
    else if (key == "alpha") c.alpha = val;
    else if (key == "validated") c.validated = val != 0.0;
  }
  return c;
}

double d_beta_distance(const MarkovModel& m, std::size_t x, std::size_t y,
                       double beta) {
  if (x == y) return 0.0;
  return 2.0 + beta * m.v[x] + beta * m.v[y];
}

double lip_beta_seminorm(const MarkovModel& m, const std::vector<double>& phi,
                         double beta) {
  double worst = 0.0;
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = x + 1; y < m.size(); ++y)
      worst = std::max(worst, std::abs(phi[x] - phi[y]) /
                                  d_beta_distance(m, x, y, beta));
  return worst;
}

double weighted_v_norm(const MarkovModel& m, const std::vector<double>& phi,
                       double beta) {
  double worst = 0.0;
  for (std::size_t x = 0; x < m.size(); ++x)
    worst = std::max(worst, std::abs(phi[x]) / (1.0 + beta * m.v[x]));
  return worst;
}

double lip_via_infimum(const MarkovModel& m, const std::vector<double>& phi,
                       double beta) {
  const double lo0 = -*std::max_element(phi.begin(), phi.end()) - 1.0;
  const double hi0 = -*std::min_element(phi.begin(), phi.end()) + 1.0;
  double lo = lo0, hi = hi0;
  std::vector<double> shifted(phi.size());
  const auto eval = [&](double c) {
    for (std::size_t i = 0; i < phi.size(); ++i) shifted[i] = phi[i] + c;
    return weighted_v_norm(m, shifted, beta);
  };
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (eval(m1) <= eval(m2))
      hi = m2;
    else
      lo = m1;
  }
  return eval(0.5 * (lo + hi));
}

std::vector<double> stationary_distribution(const MarkovModel& m) {
  const std::size_t n = m.size();
  std::vector<double> mu(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);
  for (int it = 0; it < 200000; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[j] += mu[i] * m.p[i][j];
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) diff += std::abs(next[j] - mu[j]);
    mu.swap(next);
    if (diff < 1e-14) break;
  }
  return mu;
}

double weighted_tv(const MarkovModel& m, const std::vector<double>& mu,
                   const std::vector<double>& nu) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    acc += (1.0 + m.v[i]) * std::abs(mu[i] - nu[i]);
  return acc;
}

ContractionResult contraction_verify(const MarkovModel& m,
                                     const HarrisCertificate& cert,
                                     int n_steps) {
  m.validate();
  if (!cert.validated)
    throw std::invalid_argument("contraction_verify: certificate not validated");
  ContractionResult r;
  for (std::size_t x = 0; x < m.size(); ++x) {
    for (std::size_t y = x + 1; y < m.size(); ++y) {
      double dual = 0.0;
      for (std::size_t z = 0; z < m.size(); ++z)
        dual += (1.0 + cert.beta * m.v[z]) * std::abs(m.p[x][z] - m.p[y][z]);
      const double ratio = dual / d_beta_distance(m, x, y, cert.beta);
      if (ratio > r.c_hat) {
        r.c_hat = ratio;
        r.witness_x = x;
        r.witness_y = y;
      }
    }
  }
  r.pass = r.c_hat <= cert.alpha + 1e-12;

  const auto pi = stationary_distribution(m);
  std::vector<double> mu(m.size(), 0.0);
  mu[0] = 1.0;
  r.tvv_decay.push_back(weighted_tv(m, mu, pi));
  std::vector<double> next(m.size(), 0.0);
  for (int step = 0; step < n_steps; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) next[j] += mu[i] * m.p[i][j];
    mu = next;
    r.tvv_decay.push_back(weighted_tv(m, mu, pi));
  }
  return r;
}

double gaussian_tv_distance(double m) {
  return 2.0 * (2.0 * normal_cdf(0.5 * std::abs(m)) - 1.0);
}

double gaussian_tv_lower_bound(double m) {
  return 2.0 - 2.0 * std::exp(-m * m / 8.0);
}

CovarianceReport empirical_invariant_check(const LinearProblem& p,
                                           std::size_t n_samples, double t_burn,
                                           std::uint64_t seed) {
  p.validate();
  if (!p.dissipative())
    throw std::invalid_argument("empirical_invariant_check: problem not dissipative");
  double lambda_min = std::numeric_limits<double>::infinity();
  for (double l : p.lambda) lambda_min = std::min(lambda_min, l);
  if (lambda_min <= 0.0)
    throw std::invalid_argument("empirical_invariant_check: undamped mode present");
  if (t_burn < 5.0 / lambda_min)
    throw std::invalid_argument("empirical_invariant_check: insufficient burn-in (need >= 5/lambda_min)");

  const GaussianSpec target = invariant_covariance(p);
  const auto& g = p.grid;

  // Probe the zero mode and the first few positive wavenumbers.
  std::vector<std::size_t> probes{g.zero_mode()};
  for (std::size_t i = 0; i < g.mode_count() && probes.size() < 6; ++i)
    if (g.positive_half(i)) probes.push_back(i);

  SpectralField big(g);
  for (std::size_t i = 0; i < g.mode_count(); ++i)
    big.at(i) = Complex(3.0 * target.std_at(i) + 0.1, 0.0);
  big.enforce_hermitian();

  CovarianceReport report;
  for (int side = 0; side < 2; ++side) {
    LinearProblem q = p;
    q.init_spec.reset();
    if (side == 0)
      q.init_field.reset();
    else
      q.init_field = big;

    std::vector<double> mean_re(probes.size(), 0.0);
    std::vector<double> var_acc(probes.size(), 0.0), var2_acc(probes.size(), 0.0);
    for (std::size_t s = 0; s < n_samples; ++s) {
      RngStream rng(seed, (static_cast<std::uint64_t>(side) << 32) + s);
      const SpectralField x = sample_at_time(q, t_burn, rng);
      for (std::size_t j = 0; j < probes.size(); ++j) {
        Complex mean;
        double variance;
        marginal_moments(q, t_burn, probes[j], &mean, &variance);
        const Complex centred = x.at(probes[j]) - mean;
        const double a2 = std::norm(centred);
        var_acc[j] += a2;
        var2_acc[j] += a2 * a2;
        mean_re[j] += (x.at(probes[j]) - mean).real();
      }
    }
    for (std::size_t j = 0; j < probes.size(); ++j) {
      const double n = static_cast<double>(n_samples);
      CovarianceEntry e;
      const auto k = g.wavenumber(probes[j]);
      e.name = "var k=" + std::to_string(k[0]) +
               (g.dim() == 2 ? "," + std::to_string(k[1]) : "") +
               (side == 0 ? " from 0" : " from big");
      e.empirical = var_acc[j] / n;
      const double var_of_var =
          std::max(0.0, var2_acc[j] / n - e.empirical * e.empirical);
      e.std_error = std::sqrt(var_of_var / n);
      e.target = target.std_at(probes[j]) * target.std_at(probes[j]);
      e.pass = std::abs(e.empirical - e.target) <= 3.0 * e.std_error;
      report.entries.push_back(e);

      // mean follows the exact e^{-lambda t} decay: centred mean ~ 0
      CovarianceEntry me;
      me.name = "mean" + e.name.substr(3);
      me.empirical = mean_re[j] / n;
      me.std_error = std::sqrt(e.target / (2.0 * n));
      me.target = 0.0;
      me.pass = std::abs(me.empirical) <= 3.0 * me.std_error;
      report.entries.push_back(me);
    }
  }
  return report;
}

}  // namespace spde
