#include "core/stochastic.hpp"

#include <cmath>
#include <stdexcept>

namespace spde {

double ou_noise_variance(double lambda, double q, double dt) {
  if (dt < 0.0) throw std::invalid_argument("ou_noise_variance: dt >= 0");
  if (lambda < 0.0) throw std::invalid_argument("ou_noise_variance: lambda >= 0");
  if (lambda == 0.0) return q * q * dt;
  return q * q * (-std::expm1(-2.0 * lambda * dt)) / (2.0 * lambda);
}

double ou_step_real(double x, double lambda, double q, double dt, RngStream& rng) {
  const double v = ou_noise_variance(lambda, q, dt);
  return std::exp(-lambda * dt) * x + rng.normal(std::sqrt(v));
}

Complex ou_step_complex(Complex x, double lambda, double q, double dt,
                        RngStream& rng) {
  const double v = ou_noise_variance(lambda, q, dt);
  const double half = std::sqrt(0.5 * v);
  return std::exp(-lambda * dt) * x + Complex(rng.normal(half), rng.normal(half));
}

OuJointCoeffs ou_joint_coeffs(double lambda, double q, double dt) {
  OuJointCoeffs c;
  c.decay = std::exp(-lambda * dt);
  c.w_var = dt;
  const double v = ou_noise_variance(lambda, q, dt);
  const double cov =
      lambda == 0.0 ? q * dt : q * (-std::expm1(-lambda * dt)) / lambda;
  c.cross_coef = dt > 0.0 ? cov / dt : 0.0;
  c.cond_var = std::max(0.0, v - cov * cov / (dt > 0.0 ? dt : 1.0));
  return c;
}

WienerIncrementStream::WienerIncrementStream(FourierGrid grid, double dt,
                                             std::uint64_t seed,
                                             std::uint64_t stream_id)
    : grid_(grid), dt_(dt), rng_(seed, stream_id) {
  if (dt <= 0.0) throw std::invalid_argument("WienerIncrementStream: dt > 0");
}

SpectralField wiener_increment(const FourierGrid& grid, double dt, RngStream& rng) {
  SpectralField du(grid);
  const double half = std::sqrt(0.5 * dt);
  const double full = std::sqrt(dt);
  for (std::size_t i = 0; i < grid.mode_count(); ++i) {
    if (grid.is_zero_mode(i)) {
      du.at(i) = Complex(rng.normal(full), 0.0);
    } else if (grid.positive_half(i)) {
      const Complex z(rng.normal(half), rng.normal(half));
      du.at(i) = z;
      du.at(grid.negate(i)) = std::conj(z);
    }
  }
  return du;
}

SpectralField WienerIncrementStream::draw_increment() {
  ++counter_;
  return wiener_increment(grid_, dt_, rng_);
}

StepProcess::StepProcess(std::vector<double> breakpoints,
                         std::vector<DiagonalOperator> ops)
    : breakpoints_(std::move(breakpoints)), ops_(std::move(ops)) {
  if (ops_.empty() || breakpoints_.size() != ops_.size() + 1)
    throw std::invalid_argument("StepProcess: need M+1 breakpoints for M intervals");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] < breakpoints_[i + 1]))
      throw std::invalid_argument("StepProcess: breakpoints not increasing");
  for (const auto& op : ops_)
    if (op.grid() != ops_.front().grid())
      throw std::invalid_argument("StepProcess: mixed grids");
}

SpectralField ito_integral(const StepProcess& phi, RngStream& rng) {
  SpectralField acc(phi.grid());
  for (std::size_t n = 0; n < phi.intervals(); ++n) {
    const double dt = phi.t(n + 1) - phi.t(n);
    const SpectralField dw = wiener_increment(phi.grid(), dt, rng);
    acc += apply_multiplier(dw, phi.op(n));
  }
  return acc;
}

double ito_integral_norm_sq(const StepProcess& phi, RngStream& rng) {
  const auto& g = phi.grid();
  double total = 0.0;
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    if (g.is_zero_mode(i)) {
      double acc = 0.0;
      for (std::size_t n = 0; n < phi.intervals(); ++n) {
        const double dt = phi.t(n + 1) - phi.t(n);
        acc += phi.op(n).symbol_at(i).real() * rng.normal(std::sqrt(dt));
      }
      total += acc * acc;
    } else if (g.positive_half(i)) {
      Complex acc(0.0, 0.0);
      for (std::size_t n = 0; n < phi.intervals(); ++n) {
        const double half = std::sqrt(0.5 * (phi.t(n + 1) - phi.t(n)));
        acc += phi.op(n).symbol_at(i) *
               Complex(rng.normal(half), rng.normal(half));
      }
      total += 2.0 * std::norm(acc);
    }
  }
  return total;
}

double ito_isometry_target(const StepProcess& phi) {
  double acc = 0.0;
  for (std::size_t n = 0; n < phi.intervals(); ++n) {
    const double dt = phi.t(n + 1) - phi.t(n);
    double tr = 0.0;
    for (const auto& s : phi.op(n).symbol()) tr += std::norm(s);
    acc += tr * dt;
  }
  return acc;
}

std::vector<double> brownian_from_white_noise(double t_end, std::size_t n_steps,
                                              RngStream& rng) {
  if (n_steps == 0) throw std::invalid_argument("brownian path: n_steps > 0");
  const double dt = t_end / static_cast<double>(n_steps);
  const double step_std = std::sqrt(dt);
  std::vector<double> path(n_steps + 1, 0.0);
  for (std::size_t j = 1; j <= n_steps; ++j)
    path[j] = path[j - 1] + rng.normal(step_std);
  return path;
}

}  // namespace spde
