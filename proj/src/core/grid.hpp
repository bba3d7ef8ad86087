#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

namespace spde {

// Symmetric truncation of the Fourier lattice on the torus [0,2pi)^d with
// normalized Haar measure. Wavenumbers run over {-N/2+1, ..., N/2-1} per
// dimension; the Nyquist mode is dropped so the retained set is closed under
// k -> -k, which real fields require.
class FourierGrid {
 public:
  FourierGrid(int dim, int modes_per_dim);

  int dim() const { return dim_; }
  int modes_per_dim() const { return n_; }
  int max_wavenumber() const { return k_max_; }      // N/2 - 1
  int points_per_dim() const { return 2 * k_max_ + 1; }
  std::size_t mode_count() const { return mode_count_; }

  // Flat index <-> wavenumber. Row-major, last dimension slowest.
  std::array<int, 2> wavenumber(std::size_t flat) const;
  std::size_t flat_index(const std::array<int, 2>& k) const;
  std::size_t negate(std::size_t flat) const;

  int k_squared(std::size_t flat) const;
  bool is_zero_mode(std::size_t flat) const { return flat == zero_flat_; }
  std::size_t zero_mode() const { return zero_flat_; }

  // k is in the canonical positive half if its last nonzero component is > 0.
  bool positive_half(std::size_t flat) const;

  bool operator==(const FourierGrid& o) const {
    return dim_ == o.dim_ && n_ == o.n_;
  }
  bool operator!=(const FourierGrid& o) const { return !(*this == o); }

 private:
  int dim_;
  int n_;
  int k_max_;
  std::size_t mode_count_;
  std::size_t zero_flat_;
};

FourierGrid make_grid(int dim, int modes_per_dim);

}  // namespace spde
