#include "core/grid.hpp"

namespace spde {

FourierGrid::FourierGrid(int dim, int modes_per_dim)
    : dim_(dim), n_(modes_per_dim), k_max_(modes_per_dim / 2 - 1) {
  if (dim_ != 1 && dim_ != 2)
    throw std::invalid_argument("FourierGrid: dim must be 1 or 2");
  if (n_ < 4 || n_ % 2 != 0)
    throw std::invalid_argument("FourierGrid: modes_per_dim must be even and >= 4");
  const std::size_t s = static_cast<std::size_t>(points_per_dim());
  mode_count_ = (dim_ == 1) ? s : s * s;
  const std::size_t mid = static_cast<std::size_t>(k_max_);
  zero_flat_ = (dim_ == 1) ? mid : mid * s + mid;
}

std::array<int, 2> FourierGrid::wavenumber(std::size_t flat) const {
  const int s = points_per_dim();
  if (dim_ == 1) return {static_cast<int>(flat) - k_max_, 0};
  const int i1 = static_cast<int>(flat % static_cast<std::size_t>(s));
  const int i2 = static_cast<int>(flat / static_cast<std::size_t>(s));
  return {i1 - k_max_, i2 - k_max_};
}

std::size_t FourierGrid::flat_index(const std::array<int, 2>& k) const {
  const std::size_t s = static_cast<std::size_t>(points_per_dim());
  if (dim_ == 1) return static_cast<std::size_t>(k[0] + k_max_);
  return static_cast<std::size_t>(k[1] + k_max_) * s +
         static_cast<std::size_t>(k[0] + k_max_);
}

std::size_t FourierGrid::negate(std::size_t flat) const {
  const auto k = wavenumber(flat);
  return flat_index({-k[0], -k[1]});
}

int FourierGrid::k_squared(std::size_t flat) const {
  const auto k = wavenumber(flat);
  return k[0] * k[0] + k[1] * k[1];
}

bool FourierGrid::positive_half(std::size_t flat) const {
  const auto k = wavenumber(flat);
  if (dim_ == 1) return k[0] > 0;
  return k[1] > 0 || (k[1] == 0 && k[0] > 0);
}

FourierGrid make_grid(int dim, int modes_per_dim) {
  return FourierGrid(dim, modes_per_dim);
}

}  // namespace spde
