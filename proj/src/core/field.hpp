#pragma once

#include <complex>
#include <vector>

#include "core/grid.hpp"

namespace spde {

using Complex = std::complex<double>;

// A real scalar or vector field on the torus stored by Fourier coefficients,
// u(x) = sum_k u_k e^{i<k,x>}. Hermitian symmetry u_{-k} = conj(u_k) is the
// realness invariant; with normalized Haar measure the L2 norm is the plain
// coefficient l2 norm (Parseval, no 2pi factors).
class SpectralField {
 public:
  SpectralField(FourierGrid grid, int components = 1);

  const FourierGrid& grid() const { return grid_; }
  int components() const { return components_; }
  std::size_t modes() const { return grid_.mode_count(); }

  Complex& at(int comp, std::size_t flat) {
    return coeffs_[static_cast<std::size_t>(comp) * grid_.mode_count() + flat];
  }
  const Complex& at(int comp, std::size_t flat) const {
    return coeffs_[static_cast<std::size_t>(comp) * grid_.mode_count() + flat];
  }
  Complex& at(std::size_t flat) { return at(0, flat); }
  const Complex& at(std::size_t flat) const { return at(0, flat); }

  std::vector<Complex>& raw() { return coeffs_; }
  const std::vector<Complex>& raw() const { return coeffs_; }

  double l2_norm() const;
  double l2_norm_sq() const;
  double mean(int comp = 0) const;        // zero-mode value (must be real)
  void set_mean(double value, int comp = 0);

  // Largest |coeffs[j,-k] - conj(coeffs[j,k])|, plus zero-mode imaginary part.
  double hermitian_defect() const;
  void enforce_hermitian();

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);

 private:
  FourierGrid grid_;
  int components_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

// Single cosine mode helper: amplitude * 2 cos(<k,x>) (coefficients 1 at +-k).
SpectralField cosine_field(const FourierGrid& grid, const std::array<int, 2>& k,
                           double amplitude = 1.0);
SpectralField constant_field(const FourierGrid& grid, double value);

}  // namespace spde
