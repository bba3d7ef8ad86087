#pragma once

#include <functional>

#include "core/field.hpp"

namespace spde {

// Fourier-multiplier operator: (Au)_k = symbol(k) * u_k. Realness of A u for
// real u requires symbol(-k) = conj(symbol(k)).
class DiagonalOperator {
 public:
  DiagonalOperator(FourierGrid grid, std::vector<Complex> symbol);

  static DiagonalOperator from_function(
      const FourierGrid& grid,
      const std::function<Complex(const std::array<int, 2>&)>& f);

  static DiagonalOperator identity(const FourierGrid& grid);
  static DiagonalOperator laplacian(const FourierGrid& grid);            // -|k|^2
  // (1+|k|^2)^alpha, the fractional power of 1 - Laplacian.
  static DiagonalOperator bessel_power(const FourierGrid& grid, double alpha);
  // e^{t m_k} for a real symbol m (semigroup of the multiplier).
  static DiagonalOperator exponential(const FourierGrid& grid,
                                      const std::vector<double>& m, double t);
  static DiagonalOperator partial_derivative(const FourierGrid& grid, int axis);

  const FourierGrid& grid() const { return grid_; }
  const std::vector<Complex>& symbol() const { return symbol_; }
  Complex symbol_at(std::size_t flat) const { return symbol_[flat]; }

  double hermitian_defect() const;

 private:
  FourierGrid grid_;
  std::vector<Complex> symbol_;
};

// ( sum_{j,k} (1+|k|^2)^s |u_{j,k}|^2 )^{1/2}; s = 0 is the L2 norm.
double sobolev_norm(const SpectralField& u, double s);

SpectralField apply_multiplier(const SpectralField& u, const DiagonalOperator& a);

// Operator-norm check for the smoothing bound of the semigroup of a strictly
// negative multiplier: lhs = max_k (1+|m_k|)^alpha e^{m_k t} on the
// truncation, rhs = C_alpha (1 + t^{-alpha}) with a computed constant
// C_alpha = sup_{l>=0}(1+l)^alpha e^{-l} * max(1, alpha^alpha e^{-alpha}).
struct SmoothingBound {
  double lhs;
  double rhs;
};
SmoothingBound semigroup_smoothing_bound_check(const DiagonalOperator& l,
                                               double alpha, double t);
double smoothing_constant(double alpha);

// Projection onto divergence-free vector fields, (Pi u)_k = u_k - k<k,u_k>/|k|^2.
SpectralField leray_project(const SpectralField& u);

// Velocity from scalar vorticity on the 2-D torus. Inverts the curl exactly:
// u = grad^perp psi with Delta psi = w, i.e. u_k = -i k^perp w_k / |k|^2.
SpectralField biot_savart(const SpectralField& w);

// Scalar curl of a 2-component field, w_k = i(k1 u2_k - k2 u1_k).
SpectralField vorticity(const SpectralField& u);

// Largest |<k, u_k>| over modes (0 for divergence-free fields).
double divergence_defect(const SpectralField& u);

}  // namespace spde
