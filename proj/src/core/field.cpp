#include "core/field.hpp"

#include <algorithm>
#include <cmath>

namespace spde {

SpectralField::SpectralField(FourierGrid grid, int components)
    : grid_(grid), components_(components) {
  if (components_ < 1) throw std::invalid_argument("SpectralField: components >= 1");
  coeffs_.assign(static_cast<std::size_t>(components_) * grid_.mode_count(),
                 Complex(0.0, 0.0));
}

double SpectralField::l2_norm_sq() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return s;
}

double SpectralField::l2_norm() const { return std::sqrt(l2_norm_sq()); }

double SpectralField::mean(int comp) const {
  return at(comp, grid_.zero_mode()).real();
}

void SpectralField::set_mean(double value, int comp) {
  at(comp, grid_.zero_mode()) = Complex(value, 0.0);
}

double SpectralField::hermitian_defect() const {
  double worst = 0.0;
  for (int j = 0; j < components_; ++j) {
    for (std::size_t i = 0; i < grid_.mode_count(); ++i) {
      const std::size_t ni = grid_.negate(i);
      worst = std::max(worst, std::abs(at(j, ni) - std::conj(at(j, i))));
    }
    worst = std::max(worst, std::abs(at(j, grid_.zero_mode()).imag()));
  }
  return worst;
}

void SpectralField::enforce_hermitian() {
  for (int j = 0; j < components_; ++j) {
    for (std::size_t i = 0; i < grid_.mode_count(); ++i) {
      if (!grid_.positive_half(i)) continue;
      const std::size_t ni = grid_.negate(i);
      const Complex avg = 0.5 * (at(j, i) + std::conj(at(j, ni)));
      at(j, i) = avg;
      at(j, ni) = std::conj(avg);
    }
    auto& z = at(j, grid_.zero_mode());
    z = Complex(z.real(), 0.0);
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  for (auto& c : coeffs_) c *= a;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

SpectralField cosine_field(const FourierGrid& grid, const std::array<int, 2>& k,
                           double amplitude) {
  SpectralField f(grid);
  f.at(grid.flat_index(k)) += Complex(amplitude, 0.0);
  f.at(grid.flat_index({-k[0], -k[1]})) += Complex(amplitude, 0.0);
  return f;
}

SpectralField constant_field(const FourierGrid& grid, double value) {
  SpectralField f(grid);
  f.set_mean(value);
  return f;
}

}  // namespace spde
