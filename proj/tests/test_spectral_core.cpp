#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/gaussian.hpp"
#include "core/spectral_ops.hpp"
#include "core/transform.hpp"

using namespace spde;

namespace {

// Direct-space quadrature of the L2 norm by explicit mode summation at
// uniform points; independent of the FFT path.
double l2_quadrature_oracle(const SpectralField& u) {
  const auto& g = u.grid();
  REQUIRE(g.dim() == 1);
  const int m = 4 * g.points_per_dim() + 1;
  double acc = 0.0;
  for (int j = 0; j < m; ++j) {
    const double x = 2.0 * std::numbers::pi * j / m;
    Complex val(0.0, 0.0);
    for (std::size_t i = 0; i < g.mode_count(); ++i)
      val += u.at(i) * std::exp(Complex(0.0, g.wavenumber(i)[0] * x));
    acc += std::norm(val);
  }
  return std::sqrt(acc / m);
}

// O(modes^2) truncated convolution.
SpectralField convolution_oracle(const SpectralField& u, const SpectralField& v) {
  const auto& g = u.grid();
  SpectralField w(g);
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    const auto k = g.wavenumber(i);
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < g.mode_count(); ++j) {
      const auto kj = g.wavenumber(j);
      const std::array<int, 2> diff{k[0] - kj[0], k[1] - kj[1]};
      const int kmax = g.max_wavenumber();
      if (std::abs(diff[0]) > kmax || std::abs(diff[1]) > kmax) continue;
      acc += u.at(j) * v.at(g.flat_index(diff));
    }
    w.at(i) = acc;
  }
  return w;
}

GaussianSpec decaying_spec(const FourierGrid& g, double p) {
  return GaussianSpec::from_function(g, [p](const std::array<int, 2>& k) {
    return std::pow(1.0 + k[0] * k[0] + k[1] * k[1], -p);
  });
}

}  // namespace

TEST_CASE("grid construction and wavenumber set") {
  const FourierGrid g = make_grid(1, 8);
  CHECK(g.mode_count() == 7);
  CHECK(g.max_wavenumber() == 3);
  // symmetric under k -> -k
  for (std::size_t i = 0; i < g.mode_count(); ++i)
    CHECK(g.wavenumber(g.negate(i))[0] == -g.wavenumber(i)[0]);

  const FourierGrid g2 = make_grid(2, 4);
  CHECK(g2.mode_count() == 9);

  CHECK_THROWS_AS(make_grid(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(3, 8), std::invalid_argument);
}

TEST_CASE("sobolev norm matches the weighted coefficient sum") {
  const FourierGrid g = make_grid(1, 16);
  const SpectralField u = cosine_field(g, {1, 0});  // 2 cos x
  CHECK(sobolev_norm(u, 1.0) == doctest::Approx(2.0));  // norm^2 = 2*2^1
  CHECK(sobolev_norm(u, 0.0) == doctest::Approx(std::sqrt(2.0)));

  const SpectralField one = constant_field(g, 1.0);
  for (double s : {-1.0, 0.0, 0.7, 2.0})
    CHECK(sobolev_norm(one, s) == doctest::Approx(1.0));
}

TEST_CASE("parseval: spectral L2 equals direct-space quadrature") {
  const FourierGrid g = make_grid(1, 32);
  RngStream rng(123);
  for (int rep = 0; rep < 20; ++rep) {
    const SpectralField u = sample(decaying_spec(g, 0.6), rng);
    const double oracle = l2_quadrature_oracle(u);
    CHECK(sobolev_norm(u, 0.0) ==
          doctest::Approx(oracle).epsilon(1e-12));
    CHECK(lp_norm(u, 2) == doctest::Approx(oracle).epsilon(1e-10));
  }
}

TEST_CASE("apply_multiplier: identity, laplacian eigenfunction, grids") {
  const FourierGrid g = make_grid(1, 16);
  const SpectralField u = cosine_field(g, {1, 0});
  const SpectralField same = apply_multiplier(u, DiagonalOperator::identity(g));
  CHECK((same - u).l2_norm() == 0.0);

  const SpectralField lap = apply_multiplier(u, DiagonalOperator::laplacian(g));
  CHECK((lap + u).l2_norm() == doctest::Approx(0.0));  // -|k|^2 = -1

  const FourierGrid other = make_grid(1, 32);
  CHECK_THROWS_AS(
      apply_multiplier(u, DiagonalOperator::identity(other)),
      std::invalid_argument);
}

TEST_CASE("fractional power shifts the sobolev index") {
  const FourierGrid g = make_grid(1, 64);
  RngStream rng(5);
  const SpectralField u = sample(decaying_spec(g, 1.2), rng);
  for (double alpha : {0.25, 0.5, 1.0}) {
    const SpectralField v =
        apply_multiplier(u, DiagonalOperator::bessel_power(g, alpha));
    for (double s : {-0.5, 0.0, 0.8})
      CHECK(sobolev_norm(v, s) ==
            doctest::Approx(sobolev_norm(u, s + 2.0 * alpha)).epsilon(1e-12));
  }
}

TEST_CASE("semigroup smoothing bound") {
  const FourierGrid g = make_grid(1, 64);
  // L = Laplacian - 1, symbol -(1 + k^2)
  const DiagonalOperator l = DiagonalOperator::from_function(
      g, [](const std::array<int, 2>& k) {
        return Complex(-(1.0 + k[0] * k[0]), 0.0);
      });

  SUBCASE("alpha = 1, t = 1") {
    const auto b = semigroup_smoothing_bound_check(l, 1.0, 1.0);
    CHECK(b.lhs <= b.rhs);
    CHECK(b.rhs == doctest::Approx(smoothing_constant(1.0) * 2.0));
  }
  SUBCASE("contraction at alpha = 0") {
    const auto b = semigroup_smoothing_bound_check(l, 0.0, 0.37);
    CHECK(b.lhs <= 1.0 + 1e-15);
  }
  SUBCASE("decay as t grows") {
    const auto b = semigroup_smoothing_bound_check(l, 2.0, 50.0);
    CHECK(b.lhs < 1e-12);
    CHECK(b.lhs <= b.rhs);
  }
  SUBCASE("bound holds across a scan of alpha and t") {
    for (double alpha : {0.1, 0.5, 1.0, 1.7, 3.0})
      for (double t : {1e-4, 1e-2, 0.5, 1.0, 7.0}) {
        const auto b = semigroup_smoothing_bound_check(l, alpha, t);
        CHECK(b.lhs <= b.rhs * (1.0 + 1e-12));
      }
  }
  SUBCASE("rejects non-negative symbols") {
    const DiagonalOperator bad = DiagonalOperator::identity(g);
    CHECK_THROWS_AS(semigroup_smoothing_bound_check(bad, 1.0, 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("leray projection") {
  const FourierGrid g = make_grid(2, 8);
  SpectralField u(g, 2);
  const std::size_t k10 = g.flat_index({1, 0});
  const std::size_t k10n = g.negate(k10);

  SUBCASE("pure gradient annihilated") {
    u.at(0, k10) = Complex(1, 0);
    u.at(0, k10n) = Complex(1, 0);
    const SpectralField p = leray_project(u);
    CHECK(p.l2_norm() == doctest::Approx(0.0));
  }
  SUBCASE("divergence-free left unchanged") {
    u.at(1, k10) = Complex(0, 1);
    u.at(1, k10n) = Complex(0, -1);
    const SpectralField p = leray_project(u);
    CHECK((p - u).l2_norm() == doctest::Approx(0.0));
  }
  SUBCASE("orthogonal decomposition at k = (1,0)") {
    u.at(0, k10) = Complex(1, 0);
    u.at(1, k10) = Complex(1, 0);
    const SpectralField p = leray_project(u);
    CHECK(std::abs(p.at(0, k10)) == doctest::Approx(0.0));
    CHECK(p.at(1, k10).real() == doctest::Approx(1.0));
  }
  SUBCASE("idempotent and divergence-free on random fields") {
    RngStream rng(77);
    const GaussianSpec spec = decaying_spec(g, 0.8);
    for (int rep = 0; rep < 25; ++rep) {
      SpectralField v(g, 2);
      for (int comp = 0; comp < 2; ++comp) {
        const SpectralField s = sample(spec, rng);
        for (std::size_t i = 0; i < g.mode_count(); ++i) v.at(comp, i) = s.at(i);
      }
      const SpectralField p1 = leray_project(v);
      const SpectralField p2 = leray_project(p1);
      CHECK((p2 - p1).l2_norm() <= 1e-14 * p1.l2_norm());
      CHECK(divergence_defect(p1) <= 1e-13 * p1.l2_norm());
    }
  }
  SUBCASE("wrong component count rejected") {
    const SpectralField scalar(g, 1);
    CHECK_THROWS_AS(leray_project(scalar), std::invalid_argument);
  }
}

TEST_CASE("biot-savart inverts the curl and gains one derivative") {
  const FourierGrid g = make_grid(2, 16);
  SUBCASE("single-mode formula") {
    SpectralField w(g);
    const std::size_t k10 = g.flat_index({1, 0});
    w.at(k10) = Complex(1, 0);
    w.at(g.negate(k10)) = Complex(1, 0);
    const SpectralField u = biot_savart(w);
    CHECK(std::abs(u.at(0, k10)) == doctest::Approx(0.0));
    CHECK(std::abs(u.at(1, k10)) == doctest::Approx(1.0));
    CHECK((vorticity(u) - w).l2_norm() <= 1e-14);
  }
  SUBCASE("round trip and the sqrt(2) bound on random fields") {
    const GaussianSpec spec = GaussianSpec::from_function(
        g, [](const std::array<int, 2>& k) {
          const int k2 = k[0] * k[0] + k[1] * k[1];
          return k2 == 0 ? 0.0 : std::pow(1.0 + k2, -0.9);
        });
    RngStream rng(31);
    for (int rep = 0; rep < 25; ++rep) {
      const SpectralField w = sample(spec, rng);
      const SpectralField u = biot_savart(w);
      CHECK((vorticity(u) - w).l2_norm() <= 1e-12 * w.l2_norm());
      CHECK(divergence_defect(u) <= 1e-13 * u.l2_norm());
      CHECK(u.hermitian_defect() <= 1e-14 * (1.0 + u.l2_norm()));
      for (double s : {-0.3, 0.0, 0.5, 1.1})
        CHECK(sobolev_norm(u, s + 1.0) <=
              std::sqrt(2.0) * sobolev_norm(w, s) * (1.0 + 1e-12));
    }
  }
  SUBCASE("nonzero mean rejected") {
    SpectralField w = constant_field(g, 1.0);
    CHECK_THROWS_AS(biot_savart(w), std::invalid_argument);
  }
}

TEST_CASE("dealiased product") {
  SUBCASE("cos * cos closed form") {
    const FourierGrid g = make_grid(1, 16);
    const SpectralField c = cosine_field(g, {1, 0}, 0.5);  // cos x
    const SpectralField p = dealiased_product(c, c);
    // cos^2 = 1/2 + cos(2x)/2
    CHECK(p.mean() == doctest::Approx(0.5));
    CHECK(p.at(g.flat_index({2, 0})).real() == doctest::Approx(0.25));
    CHECK(p.at(g.flat_index({1, 0})).real() == doctest::Approx(0.0));
  }
  SUBCASE("matches the direct convolution oracle, full bandwidth") {
    const FourierGrid g = make_grid(1, 32);
    RngStream rng(9);
    for (int rep = 0; rep < 10; ++rep) {
      const SpectralField u = sample(decaying_spec(g, 0.5), rng);
      const SpectralField v = sample(decaying_spec(g, 0.5), rng);
      const SpectralField fast = dealiased_product(u, v);
      const SpectralField slow = convolution_oracle(u, v);
      CHECK((fast - slow).l2_norm() <= 1e-12 * (1.0 + slow.l2_norm()));
    }
  }
  SUBCASE("matches the oracle in two dimensions") {
    const FourierGrid g = make_grid(2, 8);
    RngStream rng(10);
    const SpectralField u = sample(decaying_spec(g, 0.5), rng);
    const SpectralField v = sample(decaying_spec(g, 0.5), rng);
    CHECK((dealiased_product(u, v) - convolution_oracle(u, v)).l2_norm() <=
          1e-12);
  }
  SUBCASE("grid mismatch rejected") {
    const SpectralField a{make_grid(1, 16)};
    const SpectralField b{make_grid(1, 32)};
    CHECK_THROWS_AS(dealiased_product(a, b), std::invalid_argument);
  }
  SUBCASE("product sobolev inequality with a frozen constant") {
    const FourierGrid g = make_grid(1, 64);
    const double r = 1.0, s = 1.0, t = 0.6;
    // calibrate the constant once on an independent stream, then freeze
    double c_cal = 0.0;
    {
      RngStream rng(1001);
      for (int rep = 0; rep < 100; ++rep) {
        const SpectralField u = sample(decaying_spec(g, 0.9), rng);
        const SpectralField v = sample(decaying_spec(g, 0.9), rng);
        const double ratio = sobolev_norm(dealiased_product(u, v), t) /
                             (sobolev_norm(u, r) * sobolev_norm(v, s));
        c_cal = std::max(c_cal, ratio);
      }
    }
    RngStream rng(2002);
    for (int rep = 0; rep < 100; ++rep) {
      const SpectralField u = sample(decaying_spec(g, 0.9), rng);
      const SpectralField v = sample(decaying_spec(g, 0.9), rng);
      const double ratio = sobolev_norm(dealiased_product(u, v), t) /
                           (sobolev_norm(u, r) * sobolev_norm(v, s));
      CHECK(ratio <= 1.15 * c_cal);
    }
  }
}

TEST_CASE("hermitian symmetry preserved by operations") {
  const FourierGrid g = make_grid(1, 32);
  RngStream rng(64);
  for (int rep = 0; rep < 20; ++rep) {
    const SpectralField u = sample(decaying_spec(g, 0.7), rng);
    CHECK(u.hermitian_defect() == 0.0);
    const SpectralField v = dealiased_product(u, u);
    CHECK(v.hermitian_defect() <= 1e-13 * (1.0 + v.l2_norm()));
    const SpectralField w =
        apply_multiplier(u, DiagonalOperator::partial_derivative(g, 0));
    CHECK(w.hermitian_defect() <= 1e-14 * (1.0 + w.l2_norm()));
    // round trip through grid values stays real (imaginary part is lost by
    // to_grid, so compare the reconstruction instead)
    const auto vals = to_grid(u, 0, g.points_per_dim());
    const SpectralField rt = from_grid(vals, g, g.points_per_dim());
    CHECK((rt - u).l2_norm() <= 1e-12 * u.l2_norm());
  }
}

TEST_CASE("interpolation inequality holds for random fields") {
  const FourierGrid g = make_grid(1, 64);
  RngStream rng(1234);
  for (int rep = 0; rep < 100; ++rep) {
    const SpectralField u = sample(decaying_spec(g, 1.0), rng);
    const double s = 3.0 * rng.uniform();
    double r = 3.0 * rng.uniform(), t = 3.0 * rng.uniform();
    const double lo = std::min({s, r, t}), hi = std::max({s, r, t});
    const double mid = s + r + t - lo - hi;
    if (hi - lo < 1e-3) continue;
    const double lhs = std::pow(sobolev_norm(u, mid), hi - lo);
    const double rhs = std::pow(sobolev_norm(u, hi), mid - lo) *
                       std::pow(sobolev_norm(u, lo), hi - mid);
    CHECK(lhs <= rhs * (1.0 + 1e-12));
  }
}

TEST_CASE("L4 embedding ratio is bounded and stable under refinement") {
  double max_ratio_small = 0.0, max_ratio_big = 0.0;
  for (int phase = 0; phase < 2; ++phase) {
    const FourierGrid g = make_grid(1, phase == 0 ? 128 : 512);
    const GaussianSpec spec = decaying_spec(g, 0.55);
    RngStream rng(555);  // same draws for shared modes order differs; fresh ok
    double worst = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
      const SpectralField u = sample(spec, rng);
      worst = std::max(worst, lp_norm(u, 4) / sobolev_norm(u, 0.3));
    }
    (phase == 0 ? max_ratio_small : max_ratio_big) = worst;
  }
  CHECK(std::isfinite(max_ratio_big));
  CHECK(max_ratio_big <= 1.6 * max_ratio_small);
  CHECK(max_ratio_small <= 1.6 * max_ratio_big);
}
