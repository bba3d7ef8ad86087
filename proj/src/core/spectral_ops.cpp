#include "core/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spde {

DiagonalOperator::DiagonalOperator(FourierGrid grid, std::vector<Complex> symbol)
    : grid_(grid), symbol_(std::move(symbol)) {
  if (symbol_.size() != grid_.mode_count())
    throw std::invalid_argument("DiagonalOperator: symbol size mismatch");
}

DiagonalOperator DiagonalOperator::from_function(
    const FourierGrid& grid,
    const std::function<Complex(const std::array<int, 2>&)>& f) {
  std::vector<Complex> s(grid.mode_count());
  for (std::size_t i = 0; i < grid.mode_count(); ++i) s[i] = f(grid.wavenumber(i));
  return DiagonalOperator(grid, std::move(s));
}

DiagonalOperator DiagonalOperator::identity(const FourierGrid& grid) {
  return from_function(grid, [](const auto&) { return Complex(1, 0); });
}

DiagonalOperator DiagonalOperator::laplacian(const FourierGrid& grid) {
  return from_function(grid, [](const std::array<int, 2>& k) {
    return Complex(-(k[0] * k[0] + k[1] * k[1]), 0);
  });
}

DiagonalOperator DiagonalOperator::bessel_power(const FourierGrid& grid,
                                                double alpha) {
  return from_function(grid, [alpha](const std::array<int, 2>& k) {
    return Complex(std::pow(1.0 + k[0] * k[0] + k[1] * k[1], alpha), 0);
  });
}

DiagonalOperator DiagonalOperator::exponential(const FourierGrid& grid,
                                               const std::vector<double>& m,
                                               double t) {
  if (m.size() != grid.mode_count())
    throw std::invalid_argument("exponential: symbol size mismatch");
  std::vector<Complex> s(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) s[i] = Complex(std::exp(t * m[i]), 0);
  return DiagonalOperator(grid, std::move(s));
}

DiagonalOperator DiagonalOperator::partial_derivative(const FourierGrid& grid,
                                                      int axis) {
  return from_function(grid, [axis](const std::array<int, 2>& k) {
    return Complex(0, k[axis]);
  });
}

double DiagonalOperator::hermitian_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < grid_.mode_count(); ++i)
    worst = std::max(worst,
                     std::abs(symbol_[grid_.negate(i)] - std::conj(symbol_[i])));
  return worst;
}

double sobolev_norm(const SpectralField& u, double s) {
  const auto& g = u.grid();
  double acc = 0.0;
  for (int j = 0; j < u.components(); ++j)
    for (std::size_t i = 0; i < g.mode_count(); ++i)
      acc += std::pow(1.0 + g.k_squared(i), s) * std::norm(u.at(j, i));
  return std::sqrt(acc);
}

SpectralField apply_multiplier(const SpectralField& u, const DiagonalOperator& a) {
  if (u.grid() != a.grid())
    throw std::invalid_argument("apply_multiplier: grid mismatch");
  SpectralField out = u;
  for (int j = 0; j < u.components(); ++j)
    for (std::size_t i = 0; i < u.modes(); ++i) out.at(j, i) *= a.symbol_at(i);
  return out;
}

double smoothing_constant(double alpha) {
  // sup_{l>=0} (1+l)^alpha e^{-l}: 1 for alpha <= 1, else attained at alpha-1.
  const double a_sup =
      alpha <= 1.0 ? 1.0 : std::pow(alpha, alpha) * std::exp(1.0 - alpha);
  const double tail = alpha > 0.0 ? std::pow(alpha, alpha) * std::exp(-alpha) : 1.0;
  return a_sup * std::max(1.0, tail);
}

SmoothingBound semigroup_smoothing_bound_check(const DiagonalOperator& l,
                                               double alpha, double t) {
  if (alpha < 0.0) throw std::invalid_argument("smoothing check: alpha >= 0");
  if (t <= 0.0) throw std::invalid_argument("smoothing check: t > 0");
  double lhs = 0.0;
  for (std::size_t i = 0; i < l.grid().mode_count(); ++i) {
    const Complex s = l.symbol_at(i);
    if (s.imag() != 0.0 || s.real() >= 0.0)
      throw std::invalid_argument("smoothing check: symbol must be real negative");
    const double m = s.real();
    lhs = std::max(lhs, std::pow(1.0 - m, alpha) * std::exp(m * t));
  }
  const double rhs =
      smoothing_constant(alpha) * (1.0 + std::pow(t, -alpha));
  return {lhs, rhs};
}

SpectralField leray_project(const SpectralField& u) {
  if (u.grid().dim() != 2 || u.components() != 2)
    throw std::invalid_argument("leray_project: needs a 2-component field on d=2");
  SpectralField out = u;
  const auto& g = u.grid();
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    if (g.is_zero_mode(i)) continue;
    const auto k = g.wavenumber(i);
    const double k2 = static_cast<double>(k[0] * k[0] + k[1] * k[1]);
    const Complex dot = static_cast<double>(k[0]) * u.at(0, i) +
                        static_cast<double>(k[1]) * u.at(1, i);
    out.at(0, i) = u.at(0, i) - static_cast<double>(k[0]) * dot / k2;
    out.at(1, i) = u.at(1, i) - static_cast<double>(k[1]) * dot / k2;
  }
  return out;
}

SpectralField biot_savart(const SpectralField& w) {
  if (w.grid().dim() != 2 || w.components() != 1)
    throw std::invalid_argument("biot_savart: needs a scalar field on d=2");
  if (std::abs(w.at(w.grid().zero_mode())) > 1e-13 * (1.0 + w.l2_norm()))
    throw std::invalid_argument("biot_savart: vorticity must have zero mean");
  const auto& g = w.grid();
  SpectralField u(g, 2);
  const Complex i_unit(0, 1);
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    if (g.is_zero_mode(i)) continue;
    const auto k = g.wavenumber(i);
    const double k2 = static_cast<double>(k[0] * k[0] + k[1] * k[1]);
    const Complex psi = -w.at(i) / k2;  // Delta psi = w
    u.at(0, i) = -i_unit * static_cast<double>(k[1]) * psi;
    u.at(1, i) = i_unit * static_cast<double>(k[0]) * psi;
  }
  return u;
}

SpectralField vorticity(const SpectralField& u) {
  if (u.grid().dim() != 2 || u.components() != 2)
    throw std::invalid_argument("vorticity: needs a 2-component field on d=2");
  const auto& g = u.grid();
  SpectralField w(g, 1);
  const Complex i_unit(0, 1);
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    const auto k = g.wavenumber(i);
    w.at(i) = i_unit * (static_cast<double>(k[0]) * u.at(1, i) -
                        static_cast<double>(k[1]) * u.at(0, i));
  }
  return w;
}

double divergence_defect(const SpectralField& u) {
  const auto& g = u.grid();
  double worst = 0.0;
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    const auto k = g.wavenumber(i);
    const Complex div = static_cast<double>(k[0]) * u.at(0, i) +
                        static_cast<double>(k[1]) * u.at(1, i);
    worst = std::max(worst, std::abs(div));
  }
  return worst;
}

}  // namespace spde
