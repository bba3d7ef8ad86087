#include "core/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spde {

namespace {

double phi1(double z) {
  if (std::abs(z) < 1e-8) return 1.0 + 0.5 * z;
  return std::expm1(z) / z;
}

bool finite_field(const SpectralField& x) {
  for (const auto& c : x.raw())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

SpectralField component_view(const SpectralField& u, int comp) {
  SpectralField s(u.grid(), 1);
  for (std::size_t i = 0; i < u.modes(); ++i) s.at(i) = u.at(comp, i);
  return s;
}

double v_eval(ConvexV v, double x) {
  switch (v) {
    case ConvexV::Square:
      return x * x;
    case ConvexV::CoshMinusOne:
      return std::cosh(x) - 1.0;
    default:
      return 0.0;
  }
}

double v_prime(ConvexV v, double x) {
  switch (v) {
    case ConvexV::Square:
      return 2.0 * x;
    case ConvexV::CoshMinusOne:
      return std::sinh(x);
    default:
      return 0.0;
  }
}

double poly_eval(const std::vector<double>& coeffs, double x) {
  double acc = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * x + coeffs[j];
  return acc;
}

}  // namespace

void SemilinearProblem::validate() const {
  if (lambda.size() != grid.mode_count() || q.size() != grid.mode_count())
    throw std::invalid_argument("SemilinearProblem: symbol size mismatch");
  for (std::size_t i = 0; i < lambda.size(); ++i)
    if (lambda[i] < 0.0 || q[i] < 0.0)
      throw std::invalid_argument("SemilinearProblem: lambda, q >= 0");
  if (dt <= 0.0) throw std::invalid_argument("SemilinearProblem: dt > 0");
  if (t_end < dt) throw std::invalid_argument("SemilinearProblem: t_end >= dt");
  if (kind == NonlinearityKind::PolynomialReaction && reaction_coeffs.size() > 6)
    throw std::invalid_argument("reaction degree > 5 rejected (aliasing budget)");
  if (kind == NonlinearityKind::NavierStokesVorticity) {
    if (grid.dim() != 2 || init.components() != 1)
      throw std::invalid_argument("NS vorticity: scalar state on a 2-D grid");
    if (std::abs(init.mean()) > 1e-14)
      throw std::invalid_argument("NS vorticity: initial state must have zero mean");
    if (q[grid.zero_mode()] != 0.0)
      throw std::invalid_argument("NS vorticity: zero-mode forcing must vanish");
  }
}

SemilinearProblem SemilinearProblem::reaction(const FourierGrid& grid, double nu,
                                              std::vector<double> coeffs,
                                              std::vector<double> q,
                                              SpectralField init, double dt,
                                              double t_end) {
  SemilinearProblem p{grid, {}, std::move(q), NonlinearityKind::PolynomialReaction,
                      std::move(coeffs), 1.0, std::move(init), dt, t_end};
  p.lambda.resize(grid.mode_count());
  for (std::size_t i = 0; i < grid.mode_count(); ++i)
    p.lambda[i] = nu * grid.k_squared(i);
  p.validate();
  return p;
}

SemilinearProblem SemilinearProblem::navier_stokes(int modes_per_dim, double nu,
                                                   std::vector<double> q,
                                                   SpectralField init_w, double dt,
                                                   double t_end) {
  FourierGrid grid(2, modes_per_dim);
  SemilinearProblem p{grid,
                      {},
                      std::move(q),
                      NonlinearityKind::NavierStokesVorticity,
                      {},
                      nu,
                      std::move(init_w),
                      dt,
                      t_end};
  p.lambda.resize(grid.mode_count());
  for (std::size_t i = 0; i < grid.mode_count(); ++i)
    p.lambda[i] = nu * grid.k_squared(i);
  p.validate();
  return p;
}

SpectralField reaction_nonlinearity(const SpectralField& u,
                                    const std::vector<double>& coeffs) {
  if (u.components() != 1)
    throw std::invalid_argument("reaction_nonlinearity: scalar fields only");
  if (coeffs.size() > 6)
    throw std::invalid_argument("reaction degree > 5 rejected (aliasing budget)");
  SpectralField out(u.grid());
  if (coeffs.empty()) return out;
  out.set_mean(coeffs[0]);
  if (coeffs.size() > 1) {
    SpectralField scaled = u;
    scaled *= coeffs[1];
    out += scaled;
  }
  SpectralField power = u;
  for (std::size_t j = 2; j < coeffs.size(); ++j) {
    power = dealiased_product(power, u);
    if (coeffs[j] != 0.0) {
      SpectralField scaled = power;
      scaled *= coeffs[j];
      out += scaled;
    }
  }
  return out;
}

SpectralField ns_vorticity_nonlinearity(const SpectralField& w) {
  const SpectralField u = biot_savart(w);  // validates zero mean and shape
  const auto& g = w.grid();
  const SpectralField wx =
      apply_multiplier(w, DiagonalOperator::partial_derivative(g, 0));
  const SpectralField wy =
      apply_multiplier(w, DiagonalOperator::partial_derivative(g, 1));
  SpectralField adv = dealiased_product(component_view(u, 0), wx);
  adv += dealiased_product(component_view(u, 1), wy);
  adv *= -1.0;
  adv.set_mean(0.0);
  return adv;
}

ExponentialEuler::ExponentialEuler(const SemilinearProblem& p) : p_(p) {
  p_.validate();
  const std::size_t n = p_.grid.mode_count();
  decay_.resize(n);
  phi1_dt_.resize(n);
  noise_std_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    decay_[i] = std::exp(-p_.lambda[i] * p_.dt);
    phi1_dt_[i] = phi1(-p_.lambda[i] * p_.dt) * p_.dt;
    noise_std_[i] = std::sqrt(ou_noise_variance(p_.lambda[i], p_.q[i], p_.dt));
  }
}

SpectralField ExponentialEuler::nonlinearity(const SpectralField& x) const {
  switch (p_.kind) {
    case NonlinearityKind::PolynomialReaction:
      return reaction_nonlinearity(x, p_.reaction_coeffs);
    case NonlinearityKind::NavierStokesVorticity:
      return ns_vorticity_nonlinearity(x);
    default:
      return SpectralField(p_.grid, x.components());
  }
}

SpectralField ExponentialEuler::draw_noise(RngStream& rng) const {
  const auto& g = p_.grid;
  SpectralField eta(g);
  for (std::size_t i = 0; i < g.mode_count(); ++i) {
    if (g.is_zero_mode(i)) {
      eta.at(i) = Complex(rng.normal(noise_std_[i]), 0.0);
    } else if (g.positive_half(i)) {
      const double half = noise_std_[i] / std::sqrt(2.0);
      const Complex z(rng.normal(half), rng.normal(half));
      eta.at(i) = z;
      eta.at(g.negate(i)) = std::conj(z);
    }
  }
  return eta;
}

void ExponentialEuler::step_with_noise(SpectralField& x,
                                       const SpectralField& eta) const {
  if (p_.kind == NonlinearityKind::None) {
    for (std::size_t i = 0; i < x.modes(); ++i)
      x.at(i) = decay_[i] * x.at(i) + eta.at(i);
    return;
  }
  step_precomputed(x, nonlinearity(x), eta);
}

void ExponentialEuler::step_precomputed(SpectralField& x, const SpectralField& f,
                                        const SpectralField& eta) const {
  for (std::size_t i = 0; i < x.modes(); ++i)
    x.at(i) = decay_[i] * x.at(i) + phi1_dt_[i] * f.at(i) + eta.at(i);
  if (p_.kind == NonlinearityKind::NavierStokesVorticity) x.set_mean(0.0);
}

void ExponentialEuler::step(SpectralField& x, RngStream& rng) const {
  step_with_noise(x, draw_noise(rng));
}

void ExponentialEuler::convolve_noise(SpectralField& w_l,
                                      const SpectralField& eta) const {
  for (std::size_t i = 0; i < w_l.modes(); ++i)
    w_l.at(i) = decay_[i] * w_l.at(i) + eta.at(i);
}

double gronwall_constant(const std::vector<double>& coeffs, ConvexV v,
                         double radius) {
  if (v == ConvexV::None) return 0.0;
  double worst = 0.0;
  const int nx = 4001, ny = 41;
  for (int ix = 0; ix < nx; ++ix) {
    const double x = -40.0 + 80.0 * ix / (nx - 1);
    const double vx = 1.0 + v_eval(v, x);
    for (int iy = 0; iy < ny; ++iy) {
      const double y = radius == 0.0 ? 0.0 : -radius + 2.0 * radius * iy / (ny - 1);
      worst = std::max(worst, v_prime(v, x) * poly_eval(coeffs, x + y) / vx);
      if (radius == 0.0) break;
    }
  }
  return std::max(0.0, worst);
}

RunResult run(const SemilinearProblem& p, const MonitorConfig& config,
              std::uint64_t seed) {
  p.validate();
  const ExponentialEuler stepper(p);
  const bool is_ns = p.kind == NonlinearityKind::NavierStokesVorticity;
  const bool track_wl = config.v_kind != ConvexV::None || config.ns_energy;

  RngStream rng(seed);
  SpectralField x = p.init;
  SpectralField w_l(p.grid, 1);
  const std::size_t n_steps =
      static_cast<std::size_t>(std::llround(p.t_end / p.dt));

  RunResult result{x, {}};
  RunMonitor& mon = result.monitor;

  const auto record = [&](double t) {
    mon.times.push_back(t);
    mon.sup_norms.push_back(sup_norm(x, 0, 2));
    mon.l2_norms.push_back(x.l2_norm());
    if (config.v_kind != ConvexV::None) {
      const SpectralField v_field = x - w_l;
      const auto vals = to_grid(v_field, 0, 2 * p.grid.points_per_dim());
      double vt = 0.0;
      for (double val : vals) vt = std::max(vt, v_eval(config.v_kind, val));
      mon.v_tilde.push_back(vt);
    }
    if (is_ns) {
      const SpectralField u = biot_savart(x);
      mon.energy.push_back(u.l2_norm_sq());
      mon.enstrophy.push_back(x.l2_norm_sq());
      const SpectralField f = ns_vorticity_nonlinearity(x);
      double inner = 0.0;
      for (std::size_t i = 0; i < x.modes(); ++i)
        inner += (std::conj(x.at(i)) * f.at(i)).real();
      const double denom = x.l2_norm() * f.l2_norm();
      mon.orth_residual.push_back(denom > 0.0 ? std::abs(inner) / denom : 0.0);
      const double u_norm = u.l2_norm();
      if (u_norm > 0.0)
        mon.max_divergence_defect =
            std::max(mon.max_divergence_defect, divergence_defect(u) / u_norm);
    }
    if (track_wl) mon.sup_wl = std::max(mon.sup_wl, sup_norm(w_l, 0, 2));
  };

  record(0.0);
  for (std::size_t n = 0; n < n_steps; ++n) {
    const double t = p.dt * static_cast<double>(n);

    double v2_before = 0.0, rhs = 0.0, w2_before = 0.0;
    const bool have_f = p.kind != NonlinearityKind::None;
    SpectralField f(p.grid, p.init.components());
    if (have_f) f = stepper.nonlinearity(x);
    if (config.ns_energy) {
      const SpectralField v_field = x - w_l;
      v2_before = v_field.l2_norm_sq();
      w2_before = x.l2_norm_sq();
      const double h_wl = sobolev_norm(w_l, 0.5);
      rhs = 1.1 * ((8.0 / p.viscosity) * h_wl * h_wl * v2_before +
                   2.0 * h_wl * h_wl * h_wl) +
            p.dt * f.l2_norm_sq();
      double grad = 0.0;
      for (std::size_t i = 0; i < x.modes(); ++i)
        grad += p.grid.k_squared(i) * std::norm(x.at(i));
      mon.grad_enstrophy.push_back(grad);
    }

    const SpectralField eta = stepper.draw_noise(rng);
    if (have_f)
      stepper.step_precomputed(x, f, eta);
    else
      stepper.step_with_noise(x, eta);
    if (track_wl) stepper.convolve_noise(w_l, eta);

    if (config.ns_energy) {
      const SpectralField v_field = x - w_l;
      const double lhs = (v_field.l2_norm_sq() - v2_before) / p.dt;
      mon.energy_lhs.push_back(lhs);
      mon.energy_rhs.push_back(rhs);
      mon.enstrophy_rate.push_back((x.l2_norm_sq() - w2_before) / p.dt);
      if (lhs > rhs) mon.energy_inequality_ok = false;
    }
    if (is_ns) mon.max_mean_abs = std::max(mon.max_mean_abs, std::abs(x.mean()));

    const double t_next = t + p.dt;
    if (!finite_field(x)) {
      mon.blew_up = true;
      mon.blowup_time = t_next;
      break;
    }
    const bool recording = (n + 1) % static_cast<std::size_t>(config.record_every) == 0 ||
                           n + 1 == n_steps;
    if (recording) {
      if (sup_norm(x, 0, 2) > config.blowup_ceiling) {
        mon.blew_up = true;
        mon.blowup_time = t_next;
        break;
      }
      record(t_next);
    }
  }

  // Gronwall consistency of the convexity monitor, with the rate implied by
  // the recorded noise magnitude.
  if (config.v_kind != ConvexV::None && !mon.v_tilde.empty()) {
    const std::vector<double> coeffs =
        p.kind == NonlinearityKind::PolynomialReaction ? p.reaction_coeffs
                                                       : std::vector<double>{};
    mon.gronwall_constant = gronwall_constant(coeffs, config.v_kind, mon.sup_wl);
    for (std::size_t j = 0; j + 1 < mon.v_tilde.size(); ++j) {
      const double dt_rec = mon.times[j + 1] - mon.times[j];
      const double allowed = (mon.v_tilde[j] + 1.0) *
                             std::exp(1.1 * mon.gronwall_constant * dt_rec);
      if (mon.v_tilde[j + 1] + 1.0 > allowed * (1.0 + 1e-9))
        mon.gronwall_flag = true;
    }
  }

  result.state = x;
  return result;
}

double strong_refinement_error(const SemilinearProblem& p, std::size_t n_paths,
                               std::uint64_t seed) {
  SemilinearProblem fine = p;
  fine.dt = p.dt / 2.0;
  const ExponentialEuler coarse_stepper(p);
  const ExponentialEuler fine_stepper(fine);
  const std::size_t n_steps =
      static_cast<std::size_t>(std::llround(p.t_end / p.dt));

  std::vector<double> fine_decay(p.grid.mode_count());
  for (std::size_t i = 0; i < p.grid.mode_count(); ++i)
    fine_decay[i] = std::exp(-p.lambda[i] * fine.dt);

  double acc = 0.0;
  for (std::size_t path = 0; path < n_paths; ++path) {
    RngStream rng(seed, path);
    SpectralField xc = p.init;
    SpectralField xf = p.init;
    for (std::size_t n = 0; n < n_steps; ++n) {
      const SpectralField e1 = fine_stepper.draw_noise(rng);
      const SpectralField e2 = fine_stepper.draw_noise(rng);
      fine_stepper.step_with_noise(xf, e1);
      fine_stepper.step_with_noise(xf, e2);
      SpectralField ec(p.grid);
      for (std::size_t i = 0; i < p.grid.mode_count(); ++i)
        ec.at(i) = fine_decay[i] * e1.at(i) + e2.at(i);
      coarse_stepper.step_with_noise(xc, ec);
    }
    acc += (xc - xf).l2_norm();
  }
  return acc / static_cast<double>(n_paths);
}

}  // namespace spde
