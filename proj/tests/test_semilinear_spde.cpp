#include <doctest.h>

#include <cmath>

#include "core/semilinear.hpp"

using namespace spde;

namespace {

GaussianSpec trace_class_noise(const FourierGrid& g, double amp) {
  return GaussianSpec::from_function(g, [amp](const std::array<int, 2>& k) {
    return amp / (1.0 + k[0] * k[0] + k[1] * k[1]);
  });
}

// pointwise polynomial evaluated on a 4x-refined lattice, then truncated
SpectralField refined_grid_oracle(const SpectralField& u,
                                  const std::vector<double>& coeffs) {
  const int m = 4 * u.grid().points_per_dim();
  const auto vals = to_grid(u, 0, m);
  std::vector<double> out(vals.size());
  for (std::size_t j = 0; j < vals.size(); ++j) {
    double acc = 0.0;
    for (std::size_t c = coeffs.size(); c-- > 0;)
      acc = acc * vals[j] + coeffs[c];
    out[j] = acc;
  }
  return from_grid(out, u.grid(), m);
}

}  // namespace

TEST_CASE("reaction nonlinearity") {
  const auto g = make_grid(1, 32);

  SUBCASE("identity polynomial") {
    const SpectralField u = cosine_field(g, {1, 0}, 0.5);
    const SpectralField f = reaction_nonlinearity(u, {0.0, 1.0});
    CHECK((f - u).l2_norm() == doctest::Approx(0.0));
  }
  SUBCASE("u - u^3 on the constant 1/2") {
    const SpectralField u = constant_field(g, 0.5);
    const SpectralField f = reaction_nonlinearity(u, {0.0, 1.0, 0.0, -1.0});
    CHECK(f.mean() == doctest::Approx(0.375));
    SpectralField rest = f;
    rest.set_mean(0.0);
    CHECK(rest.l2_norm() <= 1e-14);
  }
  SUBCASE("low-band field matches the refined-grid oracle up to degree 5") {
    // bandwidth K/4 keeps every chained product inside the grid
    const GaussianSpec spec = GaussianSpec::from_function(
        g, [](const std::array<int, 2>& k) {
          return std::abs(k[0]) <= 3 ? 0.5 : 0.0;
        });
    RngStream rng(17);
    const std::vector<double> coeffs{0.3, -0.5, 0.2, 1.0, -0.1, -0.4};
    for (int rep = 0; rep < 10; ++rep) {
      const SpectralField u = sample(spec, rng);
      const SpectralField fast = reaction_nonlinearity(u, coeffs);
      const SpectralField oracle = refined_grid_oracle(u, coeffs);
      CHECK((fast - oracle).l2_norm() <= 1e-10 * (1.0 + oracle.l2_norm()));
    }
  }
  SUBCASE("degree above 5 rejected") {
    const SpectralField u = constant_field(g, 1.0);
    CHECK_THROWS_AS(reaction_nonlinearity(u, {0, 0, 0, 0, 0, 0, 1.0}),
                    std::invalid_argument);
  }
}

TEST_CASE("navier-stokes vorticity nonlinearity") {
  const auto g = make_grid(2, 16);

  SUBCASE("shear layer transports itself trivially") {
    // w = sin x1: u is along e2, and d2 w = 0
    SpectralField w(g);
    const std::size_t k10 = g.flat_index({1, 0});
    w.at(k10) = Complex(0, -0.5);
    w.at(g.negate(k10)) = Complex(0, 0.5);
    const SpectralField f = ns_vorticity_nonlinearity(w);
    CHECK(f.l2_norm() <= 1e-14);
  }

  SUBCASE("taylor-green matches the direct convolution oracle") {
    SpectralField w = cosine_field(g, {1, 1}, 0.25);
    w += cosine_field(g, {1, -1}, 0.25);  // cos x1 cos x2
    const SpectralField fast = ns_vorticity_nonlinearity(w);

    // direct evaluation: u = biot_savart(w); F = -(u1 d1 w + u2 d2 w) by
    // O(modes^2) convolution
    const SpectralField u = biot_savart(w);
    const SpectralField wx =
        apply_multiplier(w, DiagonalOperator::partial_derivative(g, 0));
    const SpectralField wy =
        apply_multiplier(w, DiagonalOperator::partial_derivative(g, 1));
    SpectralField oracle(g);
    for (std::size_t i = 0; i < g.mode_count(); ++i) {
      const auto k = g.wavenumber(i);
      Complex acc(0, 0);
      for (std::size_t j = 0; j < g.mode_count(); ++j) {
        const auto kj = g.wavenumber(j);
        const std::array<int, 2> d{k[0] - kj[0], k[1] - kj[1]};
        if (std::abs(d[0]) > g.max_wavenumber() ||
            std::abs(d[1]) > g.max_wavenumber())
          continue;
        acc += u.at(0, j) * wx.at(g.flat_index(d)) +
               u.at(1, j) * wy.at(g.flat_index(d));
      }
      oracle.at(i) = -acc;
    }
    oracle.set_mean(0.0);
    CHECK((fast - oracle).l2_norm() <= 1e-12);
  }

  SUBCASE("skew symmetry <w, F(w)> = 0 on random vorticities") {
    const GaussianSpec spec = GaussianSpec::from_function(
        g, [](const std::array<int, 2>& k) {
          const int k2 = k[0] * k[0] + k[1] * k[1];
          return k2 == 0 ? 0.0 : 1.0 / (1.0 + k2);
        });
    RngStream rng(5);
    for (int rep = 0; rep < 100; ++rep) {
      const SpectralField w = sample(spec, rng);
      const SpectralField f = ns_vorticity_nonlinearity(w);
      double inner = 0.0;
      for (std::size_t i = 0; i < g.mode_count(); ++i)
        inner += (std::conj(w.at(i)) * f.at(i)).real();
      CHECK(std::abs(inner) <= 1e-11 * w.l2_norm() * f.l2_norm());
      CHECK(std::abs(f.mean()) == 0.0);
    }
  }

  SUBCASE("nonzero mean rejected") {
    SpectralField w = constant_field(g, 0.3);
    CHECK_THROWS_AS(ns_vorticity_nonlinearity(w), std::invalid_argument);
  }
}

TEST_CASE("exponential euler stepping") {
  const auto g = make_grid(1, 16);

  SUBCASE("F = 0 reproduces the exact linear law") {
    std::vector<double> q(g.mode_count(), 0.7);
    SemilinearProblem p{g,   {},  q,   NonlinearityKind::None, {}, 1.0,
                        SpectralField(g), 0.05, 1.0};
    p.lambda.resize(g.mode_count());
    for (std::size_t i = 0; i < g.mode_count(); ++i)
      p.lambda[i] = 1.0 + g.k_squared(i);
    const ExponentialEuler stepper(p);
    const std::size_t k1 = g.flat_index({1, 0});
    const int reps = 30000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < reps; ++i) {
      RngStream rng(700, i);
      SpectralField x(g);
      for (int n = 0; n < 20; ++n) stepper.step(x, rng);
      const double v = std::norm(x.at(k1));
      s += v;
      s2 += v * v;
    }
    const double mean = s / reps;
    const double se = std::sqrt((s2 / reps - mean * mean) / reps);
    const double target = ou_noise_variance(p.lambda[k1], 0.7, 1.0);
    CHECK(std::abs(mean - target) <= 3.0 * se);
  }

  SUBCASE("deterministic linear reaction converges at order 1") {
    // du = Laplace u - c u against the scalar oracle e^{-(lambda + c) t}
    const double c = 0.8;
    const auto err_at = [&](double dt) {
      SemilinearProblem p = SemilinearProblem::reaction(
          g, 1.0, {0.0, -c}, std::vector<double>(g.mode_count(), 0.0),
          cosine_field(g, {1, 0}), dt, 1.0);
      const ExponentialEuler stepper(p);
      SpectralField x = p.init;
      RngStream rng(1);
      const int n = static_cast<int>(std::llround(1.0 / dt));
      for (int i = 0; i < n; ++i) stepper.step(x, rng);
      const double exact = std::exp(-(1.0 + c) * 1.0);
      return std::abs(x.at(g.flat_index({1, 0})).real() - exact);
    };
    const double e1 = err_at(1.0 / 16), e2 = err_at(1.0 / 32);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.12));
  }

  SUBCASE("lambda = 0 mode is euler plus brownian increment") {
    SemilinearProblem p = SemilinearProblem::reaction(
        g, 1.0, {0.25}, std::vector<double>(g.mode_count(), 0.5),
        SpectralField(g), 0.01, 1.0);
    const ExponentialEuler stepper(p);
    const int reps = 40000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < reps; ++i) {
      RngStream rng(900, i);
      SpectralField x(g);
      stepper.step(x, rng);
      s += x.mean();
      s2 += x.mean() * x.mean();
    }
    const double mean = s / reps;
    const double var = s2 / reps - mean * mean;
    CHECK(mean == doctest::Approx(0.25 * 0.01).epsilon(0.05));  // phi1(0) dt c0
    CHECK(var == doctest::Approx(0.25 * 0.01).epsilon(0.05));   // q^2 dt
  }
}

TEST_CASE("runs, blow-up semantics and monitors") {
  const auto g = make_grid(1, 32);

  SUBCASE("zero noise, zero start stays zero") {
    SemilinearProblem p = SemilinearProblem::reaction(
        g, 1.0, {0.0, 1.0, 0.0, -1.0}, std::vector<double>(g.mode_count(), 0.0),
        SpectralField(g), 0.01, 2.0);
    const RunResult res = run(p, {}, 7);
    CHECK(res.state.l2_norm() == 0.0);
    CHECK(!res.monitor.blew_up);
  }

  SUBCASE("allen-cahn with small noise stays bounded") {
    const GaussianSpec noise = trace_class_noise(g, 0.05);
    SpectralField u0 = constant_field(g, 0.5);
    SemilinearProblem p = SemilinearProblem::reaction(
        g, 1.0, {0.0, 1.0, 0.0, -1.0}, noise.mode_std(), u0, 0.01, 10.0);
    MonitorConfig mc;
    mc.v_kind = ConvexV::Square;
    mc.record_every = 5;
    const RunResult res = run(p, mc, 11);
    CHECK(!res.monitor.blew_up);
    for (double s : res.monitor.sup_norms) CHECK(s <= 1.5);
    CHECK(!res.monitor.gronwall_flag);
  }

  SUBCASE("wrong-sign cubic blows up near the ODE time 1/(2 u0^2)") {
    SemilinearProblem p = SemilinearProblem::reaction(
        g, 1.0, {0.0, 0.0, 0.0, 1.0}, std::vector<double>(g.mode_count(), 0.0),
        constant_field(g, 2.0), 1e-4, 1.0);
    MonitorConfig mc;
    mc.record_every = 5;
    const RunResult res = run(p, mc, 3);
    CHECK(res.monitor.blew_up);
    CHECK(res.monitor.blowup_time >= 0.124);
    CHECK(res.monitor.blowup_time <= 0.4);
  }
}

TEST_CASE("convexity monitor") {
  const auto g = make_grid(1, 32);

  SUBCASE("pure heat semigroup: V-tilde nonincreasing") {
    RngStream seed_rng(3);
    SpectralField u0 = cosine_field(g, {1, 0}, 0.8);
    u0 += cosine_field(g, {3, 0}, 0.4);
    SemilinearProblem p{g,   {},  std::vector<double>(g.mode_count(), 0.0),
                        NonlinearityKind::None, {}, 1.0, u0, 0.01, 1.0};
    p.lambda.resize(g.mode_count());
    for (std::size_t i = 0; i < g.mode_count(); ++i)
      p.lambda[i] = g.k_squared(i);
    MonitorConfig mc;
    mc.v_kind = ConvexV::Square;
    const RunResult res = run(p, mc, 1);
    for (std::size_t j = 0; j + 1 < res.monitor.v_tilde.size(); ++j)
      CHECK(res.monitor.v_tilde[j + 1] <= res.monitor.v_tilde[j] * (1 + 1e-10));
    CHECK(!res.monitor.gronwall_flag);
  }

  SUBCASE("cosh - 1 variant also nonincreasing under the semigroup") {
    SemilinearProblem p{g,   {},  std::vector<double>(g.mode_count(), 0.0),
                        NonlinearityKind::None, {}, 1.0,
                        cosine_field(g, {2, 0}, 0.5), 0.01, 0.5};
    p.lambda.resize(g.mode_count());
    for (std::size_t i = 0; i < g.mode_count(); ++i)
      p.lambda[i] = g.k_squared(i);
    MonitorConfig mc;
    mc.v_kind = ConvexV::CoshMinusOne;
    const RunResult res = run(p, mc, 1);
    for (std::size_t j = 0; j + 1 < res.monitor.v_tilde.size(); ++j)
      CHECK(res.monitor.v_tilde[j + 1] <= res.monitor.v_tilde[j] * (1 + 1e-10));
  }

  SUBCASE("d/dt V-tilde = -2 c^2 for constant state and f = -u") {
    const double c = 1.3;
    SemilinearProblem p = SemilinearProblem::reaction(
        g, 1.0, {0.0, -1.0}, std::vector<double>(g.mode_count(), 0.0),
        constant_field(g, c), 1e-3, 0.1);
    MonitorConfig mc;
    mc.v_kind = ConvexV::Square;
    mc.record_every = 1;
    const RunResult res = run(p, mc, 1);
    const double rate =
        (res.monitor.v_tilde[1] - res.monitor.v_tilde[0]) / 1e-3;
    CHECK(rate == doctest::Approx(-2.0 * c * c).epsilon(0.01));
  }

  SUBCASE("gronwall constant is positive for allen-cahn under noise") {
    CHECK(gronwall_constant({0.0, 1.0, 0.0, -1.0}, ConvexV::Square, 0.5) > 0.0);
    CHECK(gronwall_constant({}, ConvexV::Square, 1.0) == 0.0);  // f = 0
  }
}

TEST_CASE("navier-stokes runs") {
  SUBCASE("zero noise: enstrophy and ||v||^2 strictly decrease") {
    const int n = 32;
    const FourierGrid g(2, n);
    SpectralField w0 = cosine_field(g, {1, 1}, 0.5);
    w0 += cosine_field(g, {2, -1}, 0.25);
    SemilinearProblem p = SemilinearProblem::navier_stokes(
        n, 0.1, std::vector<double>(g.mode_count(), 0.0), w0, 0.01, 1.0);
    MonitorConfig mc;
    mc.ns_energy = true;
    const RunResult res = run(p, mc, 1);
    CHECK(res.monitor.energy_inequality_ok);
    for (std::size_t j = 0; j + 1 < res.monitor.enstrophy.size(); ++j)
      CHECK(res.monitor.enstrophy[j + 1] < res.monitor.enstrophy[j]);
    CHECK(res.monitor.max_mean_abs == 0.0);
    CHECK(res.monitor.max_divergence_defect <= 1e-12);
  }

  SUBCASE("deterministic forced run satisfies the energy inequality") {
    const int n = 32;
    const FourierGrid g(2, n);
    std::vector<double> q(g.mode_count(), 0.0);
    const std::size_t kf = g.flat_index({1, 2});
    q[kf] = q[g.negate(kf)] = 0.3;
    SpectralField w0 = cosine_field(g, {1, 1}, 0.3);
    SemilinearProblem p = SemilinearProblem::navier_stokes(n, 0.1, q, w0, 0.005, 2.0);
    MonitorConfig mc;
    mc.ns_energy = true;
    const RunResult res = run(p, mc, 77);
    CHECK(res.monitor.energy_inequality_ok);
    double worst = 0.0;
    for (double r : res.monitor.orth_residual) worst = std::max(worst, r);
    CHECK(worst <= 1e-11);
  }
}

TEST_CASE("strong refinement error halves with dt (order ~1)") {
  const auto g = make_grid(1, 32);
  const GaussianSpec noise = trace_class_noise(g, 0.1);
  SemilinearProblem p = SemilinearProblem::reaction(
      g, 1.0, {0.0, 1.0, 0.0, -1.0}, noise.mode_std(),
      constant_field(g, 0.5), 1.0 / 16, 1.0);
  const double e1 = strong_refinement_error(p, 60, 5);
  SemilinearProblem ph = p;
  ph.dt = p.dt / 2.0;
  const double e2 = strong_refinement_error(ph, 60, 6);
  const double ratio = e1 / e2;
  CHECK(ratio >= 1.7);
  CHECK(ratio <= 2.3);
}

TEST_CASE("bootstrap smoothing: rough data is H^1 after t = 0.1") {
  // u0 in H^{0.1} only; with trace-class noise the H^1 norm at t = 0.1 is
  // finite and stable under refinement of the mode cutoff.
  const int n_coarse = 64, n_fine = 128;
  const FourierGrid gc(1, n_coarse), gf(1, n_fine);

  // one rough initial condition, shared across resolutions
  SpectralField u0f(gf);
  RngStream rng(13);
  for (std::size_t i = 0; i < gf.mode_count(); ++i) {
    if (gf.is_zero_mode(i)) {
      u0f.at(i) = Complex(rng.normal(), 0.0);
    } else if (gf.positive_half(i)) {
      const double amp = std::pow(1.0 + gf.k_squared(i), -0.35);
      const Complex z(rng.normal(amp), rng.normal(amp));
      u0f.at(i) = z;
      u0f.at(gf.negate(i)) = std::conj(z);
    }
  }
  SpectralField u0c(gc);
  for (std::size_t i = 0; i < gc.mode_count(); ++i)
    u0c.at(i) = u0f.at(gf.flat_index(gc.wavenumber(i)));

  const auto make_problem = [&](const FourierGrid& g, const SpectralField& u0) {
    std::vector<double> q(g.mode_count());
    for (std::size_t i = 0; i < g.mode_count(); ++i)
      q[i] = 1.0 / (1.0 + g.k_squared(i));
    return SemilinearProblem::reaction(g, 1.0, {0.0, 1.0, 0.0, -1.0}, q, u0,
                                       1e-3, 0.1);
  };
  const SemilinearProblem pc = make_problem(gc, u0c);
  const SemilinearProblem pf = make_problem(gf, u0f);
  const ExponentialEuler sc(pc), sf(pf);

  // fine-grid noise, restricted to the coarse grid each step
  SpectralField xc = pc.init, xf = pf.init;
  RngStream noise_rng(29);
  const int steps = 100;
  for (int s = 0; s < steps; ++s) {
    const SpectralField ef = sf.draw_noise(noise_rng);
    SpectralField ec(gc);
    for (std::size_t i = 0; i < gc.mode_count(); ++i)
      ec.at(i) = ef.at(gf.flat_index(gc.wavenumber(i)));
    sf.step_with_noise(xf, ef);
    sc.step_with_noise(xc, ec);
  }
  const double h1_c = sobolev_norm(xc, 1.0);
  const double h1_f = sobolev_norm(xf, 1.0);
  CHECK(std::isfinite(h1_f));
  CHECK(std::abs(h1_f - h1_c) <= 0.1 * h1_c);

  // while the initial condition is out of H^1 under refinement
  CHECK(sobolev_norm(u0f, 1.0) > 1.5 * sobolev_norm(u0c, 1.0) * 0.5);
}

TEST_CASE("problem validation") {
  const auto g1 = make_grid(1, 16);
  CHECK_THROWS_AS(SemilinearProblem::reaction(
                      g1, 1.0, {0, 0, 0, 0, 0, 0, 1.0},
                      std::vector<double>(g1.mode_count(), 0.0),
                      SpectralField(g1), 0.01, 1.0),
                  std::invalid_argument);
  // NS requires zero-mean initial data
  const FourierGrid g2(2, 8);
  CHECK_THROWS_AS(SemilinearProblem::navier_stokes(
                      8, 0.1, std::vector<double>(g2.mode_count(), 0.0),
                      constant_field(g2, 1.0), 0.01, 1.0),
                  std::invalid_argument);
}
