#include <doctest.h>

#include <cmath>

#include "core/stochastic.hpp"

using namespace spde;

TEST_CASE("ou transition variance") {
  SUBCASE("closed form at lambda = q = dt = 1") {
    CHECK(ou_noise_variance(1.0, 1.0, 1.0) ==
          doctest::Approx(0.4323323583816936).epsilon(1e-12));
  }
  SUBCASE("lambda = 0 limit is brownian") {
    CHECK(ou_noise_variance(0.0, 2.0, 0.25) == doctest::Approx(1.0));
  }
  SUBCASE("continuity at lambda = 0: |v - q^2 dt| <= q^2 lambda dt^2") {
    for (double lambda : {1e-8, 1e-4, 0.01, 0.3})
      for (double dt : {1e-3, 0.05, 0.3}) {
        if (lambda * dt > 0.1) continue;
        const double q = 1.7;
        const double v = ou_noise_variance(lambda, q, dt);
        CHECK(std::abs(v - q * q * dt) <= q * q * lambda * dt * dt * (1 + 1e-9));
      }
  }
  SUBCASE("negative dt rejected") {
    CHECK_THROWS_AS(ou_noise_variance(1.0, 1.0, -0.1), std::invalid_argument);
  }
}

TEST_CASE("ou step reaches the stationary law") {
  const double lambda = 0.8, q = 1.3;
  const double target = q * q / (2.0 * lambda);
  RngStream rng(7);
  const int n_traj = 4000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n_traj; ++i) {
    double x = 0.0;
    // 50 / lambda time units in steps of 0.5
    for (int step = 0; step < 125; ++step)
      x = ou_step_real(x, lambda, q, 0.5, rng);
    s += x * x;
    s2 += x * x * x * x;
  }
  const double mean = s / n_traj;
  const double se = std::sqrt((s2 / n_traj - mean * mean) / n_traj);
  CHECK(std::abs(mean - target) <= 3.0 * se);
}

TEST_CASE("chapman-kolmogorov at the mode level") {
  // n small steps match one big step in distribution
  const double lambda = 1.1, q = 0.9, dt = 0.07;
  const int n_sub = 8;
  const int reps = 40000;
  const double x0 = 0.6;
  double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;
  RngStream rng(99);
  for (int i = 0; i < reps; ++i) {
    double x = x0;
    for (int k = 0; k < n_sub; ++k) x = ou_step_real(x, lambda, q, dt, rng);
    a1 += x;
    a2 += x * x;
    const double y = ou_step_real(x0, lambda, q, n_sub * dt, rng);
    b1 += y;
    b2 += y * y;
  }
  const double ma = a1 / reps, mb = b1 / reps;
  const double va = a2 / reps - ma * ma, vb = b2 / reps - mb * mb;
  const double se_mean = std::sqrt((va + vb) / reps);
  CHECK(std::abs(ma - mb) <= 3.0 * se_mean);
  const double se_var = std::sqrt(2.0 * (va * va + vb * vb) / reps);
  CHECK(std::abs(va - vb) <= 3.0 * se_var);
}

TEST_CASE("joint (state, wiener) transition is consistent") {
  const double lambda = 1.4, q = 0.8, dt = 0.2;
  const auto c = ou_joint_coeffs(lambda, q, dt);
  const double cov_target = q * (1.0 - std::exp(-lambda * dt)) / lambda;
  RngStream rng(1234);
  const int n = 200000;
  double see = 0.0, sww = 0.0, sew = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dw = rng.normal(std::sqrt(c.w_var));
    const double eta = c.cross_coef * dw + rng.normal(std::sqrt(c.cond_var));
    see += eta * eta;
    sww += dw * dw;
    sew += eta * dw;
  }
  CHECK(see / n ==
        doctest::Approx(ou_noise_variance(lambda, q, dt)).epsilon(0.02));
  CHECK(sww / n == doctest::Approx(dt).epsilon(0.02));
  CHECK(sew / n == doctest::Approx(cov_target).epsilon(0.02));

  SUBCASE("lambda = 0 degenerates to eta = q dW") {
    const auto c0 = ou_joint_coeffs(0.0, q, dt);
    CHECK(c0.cross_coef == doctest::Approx(q));
    CHECK(c0.cond_var == doctest::Approx(0.0));
  }
}

TEST_CASE("wiener increments: variance, independence") {
  const auto grid = make_grid(1, 8);
  WienerIncrementStream stream(grid, 0.25, 4242);

  SUBCASE("per-step variance is dt for every mode") {
    const int reps = 30000;
    std::vector<double> acc(grid.mode_count(), 0.0);
    for (int i = 0; i < reps; ++i) {
      const SpectralField dw = stream.draw_increment();
      for (std::size_t m = 0; m < grid.mode_count(); ++m)
        acc[m] += std::norm(dw.at(m));
    }
    for (std::size_t m = 0; m < grid.mode_count(); ++m)
      CHECK(acc[m] / reps == doctest::Approx(0.25).epsilon(0.05));
    CHECK(stream.steps_drawn() == reps);
  }

  SUBCASE("summing T/dt increments gives variance T") {
    const int steps = 16;  // T = 4
    const int reps = 20000;
    double s2 = 0.0, s4 = 0.0;
    WienerIncrementStream st(grid, 0.25, 5);
    for (int i = 0; i < reps; ++i) {
      double w = 0.0;
      for (int k = 0; k < steps; ++k) w += st.draw_increment().mean();
      s2 += w * w;
      s4 += w * w * w * w;
    }
    const double mean = s2 / reps;
    const double se = std::sqrt((s4 / reps - mean * mean) / reps);
    CHECK(std::abs(mean - 4.0) <= 3.0 * se);
  }

  SUBCASE("disjoint windows are uncorrelated") {
    const int reps = 20000;
    WienerIncrementStream st(grid, 0.5, 6);
    double cross = 0.0;
    for (int i = 0; i < reps; ++i) {
      const double w1 = st.draw_increment().mean();
      const double w2 = st.draw_increment().mean();
      cross += w1 * w2;
    }
    // Var(w1 w2) = dt^2
    CHECK(std::abs(cross / reps) <= 3.0 * 0.5 / std::sqrt(double(reps)));
  }
}

TEST_CASE("step processes and the ito isometry") {
  const auto grid = make_grid(1, 8);

  SUBCASE("breakpoints must increase") {
    std::vector<DiagonalOperator> ops{DiagonalOperator::identity(grid)};
    CHECK_THROWS_AS(StepProcess({0.0, 0.0}, ops), std::invalid_argument);
    CHECK_THROWS_AS(StepProcess({0.5, 0.1}, ops), std::invalid_argument);
  }

  SUBCASE("identity on [0,1]: each mode is standard gaussian") {
    const StepProcess phi({0.0, 1.0}, {DiagonalOperator::identity(grid)});
    CHECK(ito_isometry_target(phi) == doctest::Approx(7.0));  // 7 modes
    RngStream rng(11);
    const int reps = 30000;
    double zero_var = 0.0;
    for (int i = 0; i < reps; ++i) {
      const SpectralField x = ito_integral(phi, rng);
      const double z = x.mean();
      zero_var += z * z;
    }
    CHECK(zero_var / reps == doctest::Approx(1.0).epsilon(0.05));
  }

  SUBCASE("constant q on [0,t]: variance q^2 t") {
    const double q = 1.7, t = 0.6;
    const StepProcess phi(
        {0.0, t},
        {DiagonalOperator::from_function(
            grid, [q](const std::array<int, 2>&) { return Complex(q, 0); })});
    RngStream rng(12);
    const int reps = 30000;
    double v = 0.0;
    for (int i = 0; i < reps; ++i) {
      const double z = ito_integral(phi, rng).mean();
      v += z * z;
    }
    CHECK(v / reps == doctest::Approx(q * q * t).epsilon(0.05));
  }

  SUBCASE("isometry over random diagonal step processes") {
    RngStream gen(2020);
    for (int cs = 0; cs < 30; ++cs) {
      const std::size_t m = 1 + static_cast<std::size_t>(gen.uniform() * 3.0);
      std::vector<double> breaks{0.0};
      for (std::size_t j = 0; j < m; ++j)
        breaks.push_back(breaks.back() + 0.1 + gen.uniform());
      std::vector<DiagonalOperator> ops;
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<Complex> sym(grid.mode_count());
        for (std::size_t i = 0; i < grid.mode_count(); ++i) {
          if (!grid.positive_half(i) && !grid.is_zero_mode(i)) continue;
          const double val = -2.0 + 4.0 * gen.uniform();
          sym[i] = Complex(val, 0.0);
          sym[grid.negate(i)] = Complex(val, 0.0);
        }
        ops.emplace_back(grid, std::move(sym));
      }
      const StepProcess phi(breaks, ops);
      const double target = ito_isometry_target(phi);
      RngStream rng(300 + cs);
      const int reps = 20000;
      double s = 0.0, s2 = 0.0;
      for (int i = 0; i < reps; ++i) {
        const double n2 = ito_integral_norm_sq(phi, rng);
        s += n2;
        s2 += n2 * n2;
      }
      const double mean = s / reps;
      const double se = std::sqrt((s2 / reps - mean * mean) / reps);
      CHECK(std::abs(mean - target) <= 3.5 * se);
    }
  }

  SUBCASE("field-valued and fast-path integrals agree in law") {
    const StepProcess phi(
        {0.0, 0.5, 1.0},
        {DiagonalOperator::identity(grid), DiagonalOperator::laplacian(grid)});
    const double target = ito_isometry_target(phi);
    RngStream r1(21), r2(22);
    const int reps = 20000;
    double a = 0.0, b = 0.0;
    for (int i = 0; i < reps; ++i) {
      a += ito_integral(phi, r1).l2_norm_sq();
      b += ito_integral_norm_sq(phi, r2);
    }
    CHECK(a / reps == doctest::Approx(target).epsilon(0.05));
    CHECK(b / reps == doctest::Approx(target).epsilon(0.05));
  }
}

TEST_CASE("white noise integrates to brownian motion") {
  RngStream rng(808);
  const std::size_t n_steps = 64;
  const int reps = 20000;
  double b1_sq = 0.0, cross = 0.0, b1_4 = 0.0;
  for (int i = 0; i < reps; ++i) {
    const auto path = brownian_from_white_noise(1.0, n_steps, rng);
    CHECK(path[0] == 0.0);
    const double b_half = path[n_steps / 2];
    const double b_one = path[n_steps];
    b1_sq += b_one * b_one;
    b1_4 += b_one * b_one * b_one * b_one;
    cross += b_half * b_one;
  }
  const double mean_b1 = b1_sq / reps;
  const double se_b1 = std::sqrt((b1_4 / reps - mean_b1 * mean_b1) / reps);
  CHECK(std::abs(mean_b1 - 1.0) <= 3.0 * se_b1);
  // E B(1/2) B(1) = 1/2; product variance is bounded by E B^2(1/2) E B^2(1) ~ 3/4
  CHECK(std::abs(cross / reps - 0.5) <= 3.0 * std::sqrt(1.0 / reps));
}
