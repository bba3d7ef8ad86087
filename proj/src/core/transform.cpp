#include "core/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace spde {
namespace {

// FFTW plan cache. Planning is not thread-safe; executing a cached plan on
// fresh aligned buffers via fftw_execute_dft is.
class DftPlans {
 public:
  static DftPlans& instance() {
    static DftPlans p;
    return p;
  }

  void transform(std::vector<Complex>& data, int dim, int m, int sign) {
    const std::size_t n = data.size();
    fftw_complex* buf = fftw_alloc_complex(n);
    // std::complex<double> is layout-compatible with fftw_complex
    std::memcpy(static_cast<void*>(buf), static_cast<const void*>(data.data()),
                n * sizeof(fftw_complex));
    fftw_execute_dft(plan(dim, m, sign), buf, buf);
    std::memcpy(static_cast<void*>(data.data()), static_cast<const void*>(buf),
                n * sizeof(fftw_complex));
    fftw_free(buf);
  }

 private:
  fftw_plan plan(int dim, int m, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_tuple(dim, m, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    const std::size_t n =
        dim == 1 ? static_cast<std::size_t>(m)
                 : static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan p = dim == 1
                      ? fftw_plan_dft_1d(m, buf, buf, sign, FFTW_ESTIMATE)
                      : fftw_plan_dft_2d(m, m, buf, buf, sign, FFTW_ESTIMATE);
    fftw_free(buf);
    plans_.emplace(key, p);
    return p;
  }

  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

std::size_t lattice_size(int dim, int m) {
  return dim == 1 ? static_cast<std::size_t>(m)
                  : static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
}

std::size_t bin_of(const FourierGrid& g, std::size_t flat, int m) {
  const auto k = g.wavenumber(flat);
  const int b0 = k[0] >= 0 ? k[0] : k[0] + m;
  if (g.dim() == 1) return static_cast<std::size_t>(b0);
  const int b1 = k[1] >= 0 ? k[1] : k[1] + m;
  return static_cast<std::size_t>(b1) * static_cast<std::size_t>(m) +
         static_cast<std::size_t>(b0);
}

std::vector<Complex> to_lattice_complex(const SpectralField& u, int comp, int m) {
  const auto& g = u.grid();
  if (m < g.points_per_dim())
    throw std::invalid_argument("to_grid: lattice too coarse for the grid modes");
  std::vector<Complex> data(lattice_size(g.dim(), m), Complex(0, 0));
  for (std::size_t i = 0; i < g.mode_count(); ++i)
    data[bin_of(g, i, m)] = u.at(comp, i);
  DftPlans::instance().transform(data, g.dim(), m, FFTW_BACKWARD);
  return data;
}

}  // namespace

std::vector<double> to_grid(const SpectralField& u, int comp, int points_per_dim) {
  auto data = to_lattice_complex(u, comp, points_per_dim);
  std::vector<double> vals(data.size());
  for (std::size_t j = 0; j < data.size(); ++j) vals[j] = data[j].real();
  return vals;
}

SpectralField from_grid(const std::vector<double>& values, const FourierGrid& grid,
                        int m) {
  if (values.size() != lattice_size(grid.dim(), m))
    throw std::invalid_argument("from_grid: size mismatch");
  std::vector<Complex> data(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) data[j] = Complex(values[j], 0);
  DftPlans::instance().transform(data, grid.dim(), m, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(values.size());
  SpectralField out(grid);
  for (std::size_t i = 0; i < grid.mode_count(); ++i)
    out.at(i) = scale * data[bin_of(grid, i, m)];
  return out;
}

int dealias_points(const FourierGrid& grid) {
  // 3K+1 lattice points kill every alias of a quadratic product of two
  // bandwidth-K factors; 3N/2 >= 3K+3 satisfies that.
  return 3 * grid.modes_per_dim() / 2;
}

SpectralField dealiased_product(const SpectralField& u, const SpectralField& v) {
  if (u.grid() != v.grid())
    throw std::invalid_argument("dealiased_product: grid mismatch");
  if (u.components() != 1 || v.components() != 1)
    throw std::invalid_argument("dealiased_product: scalar fields only");
  const int m = dealias_points(u.grid());
  auto a = to_grid(u, 0, m);
  const auto b = to_grid(v, 0, m);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] *= b[j];
  return from_grid(a, u.grid(), m);
}

double lp_norm(const SpectralField& u, int p, int comp) {
  if (p <= 0 || p % 2 != 0)
    throw std::invalid_argument("lp_norm: p must be a positive even integer");
  // |u|^p is a trig polynomial of bandwidth p*K; p*K+1 points integrate it
  // exactly, only the constant mode survives the lattice average.
  const int m = p * u.grid().max_wavenumber() + 2;
  const auto vals = to_grid(u, comp, m);
  double acc = 0.0;
  for (double x : vals) acc += std::pow(x, p);
  acc /= static_cast<double>(vals.size());
  return std::pow(acc, 1.0 / static_cast<double>(p));
}

double sup_norm(const SpectralField& u, int comp, int oversample) {
  const int m = oversample * u.grid().points_per_dim();
  const auto vals = to_grid(u, comp, m);
  double worst = 0.0;
  for (double x : vals) worst = std::max(worst, std::abs(x));
  return worst;
}

}  // namespace spde
