#include "t3ns/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "t3ns/norms.hpp"

namespace t3ns {

namespace {

constexpr cplx kImag{0.0, 1.0};

bool is_representative(const std::array<int, 3>& k) {
  for (int a = 0; a < 3; ++a) {
    if (k[a] > 0) return true;
    if (k[a] < 0) return false;
  }
  return false;  // zero vector
}

double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

void SolverConfig::validate() const {
  std::ostringstream msg;
  if (!(mu > 0.0)) msg << "mu: must be positive; ";
  if (!(horizon > 0.0)) msg << "T: must be positive; ";
  if (!(dt > 0.0)) msg << "dt: must be positive; ";
  if (truncation < 1) msg << "K: must be at least 1; ";
  if (basis_size < 4) msg << "M: must be at least 4 (harmonic trio plus one gradient mode); ";
  if (snapshot_stride < 1) msg << "snapshot_stride: must be at least 1; ";
  if (!(tol.blowup_factor > 1.0)) msg << "blowup_factor: must exceed 1; ";
  if (!(tol.pressure_rel > 0.0)) msg << "pressure_tol: must be positive; ";
  if (!(tol.hermitian > 0.0)) msg << "hermitian_tol: must be positive; ";
  const std::string text = msg.str();
  if (!text.empty()) throw ConfigError("invalid solver configuration: " + text);
}

// ---------------------------------------------------------------------------
// GalerkinBasis
// ---------------------------------------------------------------------------

GalerkinBasis::GalerkinBasis(std::shared_ptr<const Lattice> lattice, int size,
                             std::uint64_t permutation_seed)
    : lattice_(std::move(lattice)) {
  if (size < 4)
    throw std::invalid_argument("galerkin basis: size must be at least 4");
  const int avail = available_size(*lattice_);
  if (size > avail) {
    std::ostringstream msg;
    msg << "galerkin basis: size " << size << " exceeds the " << avail
        << " rot-free modes available at this truncation"
        << (lattice_->dealias_active() ? " (dealias band active)" : "");
    throw std::invalid_argument(msg.str());
  }

  for (int a = 0; a < 3; ++a) {
    BasisEntry e;
    e.kind = BasisEntry::Kind::Constant;
    e.axis = a;
    entries_.push_back(e);
  }

  const int bound = lattice_->dealias_active() ? lattice_->dealias_bound()
                                               : lattice_->truncation();
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < lattice_->size(); ++i) {
    const WaveIndex& w = lattice_->mode(i);
    if (w.ksq == 0 || w.max_norm() > bound) continue;
    if (is_representative(w.k)) reps.push_back(i);
  }
  std::stable_sort(reps.begin(), reps.end(), [this](std::size_t a, std::size_t b) {
    const int ka = lattice_->mode(a).ksq, kb = lattice_->mode(b).ksq;
    if (ka != kb) return ka < kb;
    return a < b;
  });

  std::vector<BasisEntry> gradient;
  for (std::size_t flat : reps) {
    for (auto kind : {BasisEntry::Kind::GradCos, BasisEntry::Kind::GradSin}) {
      BasisEntry e;
      e.kind = kind;
      e.k = lattice_->mode(flat);
      e.flat = flat;
      gradient.push_back(e);
      if (3 + static_cast<int>(gradient.size()) == size) break;
    }
    if (3 + static_cast<int>(gradient.size()) == size) break;
  }
  if (permutation_seed != 0) {
    std::mt19937_64 rng(permutation_seed);
    std::shuffle(gradient.begin(), gradient.end(), rng);
  }
  entries_.insert(entries_.end(), gradient.begin(), gradient.end());
}

int GalerkinBasis::available_size(const Lattice& lattice) {
  const int bound = lattice.dealias_active() ? lattice.dealias_bound()
                                             : lattice.truncation();
  const int n = 2 * bound + 1;
  return 3 + (n * n * n - 1);  // two trig entries per +/- mode pair
}

Form GalerkinBasis::form(int j) const {
  std::vector<double> c(static_cast<std::size_t>(size()), 0.0);
  c[static_cast<std::size_t>(j)] = 1.0;
  return velocity_field(c);
}

ScalarField GalerkinBasis::divergence_field(const std::vector<double>& c) const {
  if (c.size() != entries_.size())
    throw std::invalid_argument("galerkin basis: coefficient count mismatch");
  ScalarField g(lattice_);
  const double tau = std::sqrt(0.5 * torus_volume());
  auto& coeffs = g.coeffs();
  for (std::size_t j = 3; j < entries_.size(); ++j) {
    const BasisEntry& e = entries_[j];
    const double knorm = std::sqrt(static_cast<double>(e.k.ksq));
    const double amp = c[j] * knorm / (2.0 * tau);
    // div b is -|k| cos / tau for GradCos and -|k| sin / tau for GradSin
    const cplx contrib = (e.kind == BasisEntry::Kind::GradCos)
                             ? cplx{-amp, 0.0}
                             : cplx{0.0, amp};
    coeffs[e.flat] += contrib;
    coeffs[lattice_->index_of_negated(e.flat)] += std::conj(contrib);
  }
  return g;
}

Form GalerkinBasis::velocity_field(const std::vector<double>& c) const {
  if (c.size() != entries_.size())
    throw std::invalid_argument("galerkin basis: coefficient count mismatch");
  Form u(lattice_, 2);
  const double tau = std::sqrt(0.5 * torus_volume());
  const double gamma = 1.0 / std::sqrt(torus_volume());
  const std::size_t zero = lattice_->index_of({0, 0, 0});
  for (int a = 0; a < 3; ++a)
    u.component(a).coeffs()[zero] = cplx{gamma * c[static_cast<std::size_t>(a)], 0.0};
  for (std::size_t j = 3; j < entries_.size(); ++j) {
    const BasisEntry& e = entries_[j];
    const double knorm = std::sqrt(static_cast<double>(e.k.ksq));
    // grad-cos coefficient at +k is i k / (2|k|tau); grad-sin is k / (2|k|tau)
    const cplx weight = (e.kind == BasisEntry::Kind::GradCos)
                            ? kImag * (c[j] / (2.0 * knorm * tau))
                            : cplx{c[j] / (2.0 * knorm * tau), 0.0};
    const std::size_t neg = lattice_->index_of_negated(e.flat);
    for (int a = 0; a < 3; ++a) {
      const cplx contrib = weight * static_cast<double>(e.k.k[a]);
      u.component(a).coeffs()[e.flat] += contrib;
      u.component(a).coeffs()[neg] += std::conj(contrib);
    }
  }
  return u;
}

std::array<double, 3> GalerkinBasis::harmonic_part(const std::vector<double>& c) const {
  const double gamma = 1.0 / std::sqrt(torus_volume());
  return {gamma * c[0], gamma * c[1], gamma * c[2]};
}

std::vector<double> GalerkinBasis::project(const Form& u0) const {
  if (u0.degree() != 2)
    throw std::invalid_argument("galerkin projection: expected a degree-2 form");
  if (!u0.lattice().same_as(*lattice_))
    throw std::invalid_argument("galerkin projection: lattice mismatch");
  const double volume = torus_volume();
  const double tau = std::sqrt(0.5 * volume);
  std::vector<double> c(entries_.size(), 0.0);
  const std::size_t zero = lattice_->index_of({0, 0, 0});
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    const BasisEntry& e = entries_[j];
    if (e.kind == BasisEntry::Kind::Constant) {
      c[j] = std::sqrt(volume) * u0.component(e.axis).coeffs()[zero].real();
      continue;
    }
    cplx k_dot_u{0.0, 0.0};
    for (int a = 0; a < 3; ++a)
      k_dot_u += static_cast<double>(e.k.k[a]) * u0.component(a).coeffs()[e.flat];
    const double knorm = std::sqrt(static_cast<double>(e.k.ksq));
    const double scale = volume / (knorm * tau);
    c[j] = (e.kind == BasisEntry::Kind::GradCos) ? scale * k_dot_u.imag()
                                                 : scale * k_dot_u.real();
  }
  return c;
}

// ---------------------------------------------------------------------------
// GalerkinSolver
// ---------------------------------------------------------------------------

GalerkinSolver::GalerkinSolver(SolverConfig config)
    : config_(std::move(config)),
      lattice_((config_.validate(), build_lattice(config_.truncation, config_.dealias))),
      basis_(lattice_, config_.basis_size, config_.basis_permutation_seed) {}

State GalerkinSolver::initial_state(const Form& u0) const {
  State s;
  s.t = 0.0;
  s.c = basis_.project(u0);
  return s;
}

ScalarField GalerkinSolver::g_field(const State& state) const {
  return basis_.divergence_field(state.c);
}

std::array<double, 3> GalerkinSolver::harmonic_part(const State& state) const {
  return basis_.harmonic_part(state.c);
}

struct GalerkinSolver::RhsFields {
  ScalarField g;
  ScalarField div_f;
  ScalarField quadratic;  // dealiased g^2
  ScalarField cubic;      // grad g . (u - h)
  ScalarField transport;  // grad g . h
  ScalarField w;          // div_f - quadratic - cubic - transport
  std::array<double, 3> h{0.0, 0.0, 0.0};
  std::array<double, 3> f_mean{0.0, 0.0, 0.0};
  std::array<double, 3> n2_mean{0.0, 0.0, 0.0};
};

GalerkinSolver::RhsFields GalerkinSolver::assemble(const State& state,
                                                   const Form& f_at_t) const {
  RhsFields out{ScalarField(lattice_), ScalarField(lattice_), ScalarField(lattice_),
                ScalarField(lattice_), ScalarField(lattice_), ScalarField(lattice_)};
  out.g = basis_.divergence_field(state.c);
  out.h = basis_.harmonic_part(state.c);
  out.div_f = apply_d(f_at_t).component(0);
  const std::size_t zero = lattice_->index_of({0, 0, 0});
  for (int a = 0; a < 3; ++a)
    out.f_mean[a] = f_at_t.component(a).coeffs()[zero].real();

  if (config_.nonlinearity.m21_enabled) {
    Form u = basis_.velocity_field(state.c);
    // k = 0 coefficient of (div u) u, needed by the harmonic equation; the
    // rot part of the full operator is mean-free and never contributes.
    for (int a = 0; a < 3; ++a) {
      const auto& gc = out.g.coeffs();
      const auto& uc = u.component(a).coeffs();
      double m = 0.0;
      for (std::size_t i = 0; i < gc.size(); ++i)
        m += gc[i].real() * uc[i].real() + gc[i].imag() * uc[i].imag();
      out.n2_mean[a] = m;
    }

    out.quadratic = pointwise_product(out.g, out.g);

    // grad g . (u - h) assembled on the grid in one pass
    Form u_fluct = u;
    for (int a = 0; a < 3; ++a) u_fluct.component(a).coeffs()[zero] = cplx{0.0, 0.0};
    const auto& plan = lattice_->plan();
    const std::size_t n_grid =
        static_cast<std::size_t>(plan.n_grid) * plan.n_grid * plan.n_grid;
    std::vector<double> acc(n_grid, 0.0);
    std::vector<ScalarField> grad_g;
    grad_g.reserve(3);
    for (int a = 0; a < 3; ++a) grad_g.push_back(partial_derivative(out.g, a));
    for (int a = 0; a < 3; ++a) {
      const auto ga = transform_to_grid(grad_g[static_cast<std::size_t>(a)],
                                        config_.tol.hermitian);
      const auto ua = transform_to_grid(u_fluct.component(a), config_.tol.hermitian);
      kernels::multiply_add(ga.data(), ua.data(), acc.data(), n_grid,
                            kernels::Exec::Parallel);
    }
    out.cubic = field_from_grid(lattice_, acc);
    if (lattice_->dealias_active()) {
      const int bound = lattice_->dealias_bound();
      auto& c = out.cubic.coeffs();
      for (std::size_t i = 0; i < c.size(); ++i)
        if (lattice_->mode(i).max_norm() > bound) c[i] = cplx{0.0, 0.0};
    }

    // grad g . h is linear in g, assembled spectrally
    for (int a = 0; a < 3; ++a) {
      ScalarField part = grad_g[static_cast<std::size_t>(a)];
      part *= out.h[a];
      out.transport += part;
    }
  }

  out.w = out.div_f;
  out.w -= out.quadratic;
  out.w -= out.cubic;
  out.w -= out.transport;
  return out;
}

std::vector<double> GalerkinSolver::rhs(const State& state, const Form& f_at_t) const {
  const RhsFields fields = assemble(state, f_at_t);
  const double volume = torus_volume();
  const double tau = std::sqrt(0.5 * volume);
  std::vector<double> r(state.c.size(), 0.0);
  const auto& w = fields.w.coeffs();
  for (int j = 0; j < basis_.size(); ++j) {
    const BasisEntry& e = basis_.entry(j);
    if (e.kind == BasisEntry::Kind::Constant) {
      r[static_cast<std::size_t>(j)] =
          std::sqrt(volume) * (fields.f_mean[e.axis] - fields.n2_mean[e.axis]);
      continue;
    }
    const double knorm = std::sqrt(static_cast<double>(e.k.ksq));
    const cplx wk = w[e.flat];
    // <w, div b_j> / |div b_j|^2 with |div b_j|^2 = |k|^2
    r[static_cast<std::size_t>(j)] = (e.kind == BasisEntry::Kind::GradCos)
                                         ? -volume * wk.real() / (knorm * tau)
                                         : volume * wk.imag() / (knorm * tau);
  }
  return r;
}

std::array<double, 3> GalerkinSolver::harmonic_rhs(const State& state,
                                                   const Form& f_at_t) const {
  const RhsFields fields = assemble(state, f_at_t);
  return {fields.f_mean[0] - fields.n2_mean[0], fields.f_mean[1] - fields.n2_mean[1],
          fields.f_mean[2] - fields.n2_mean[2]};
}

State GalerkinSolver::step(const State& state, const ForcingProvider& f,
                           double dt) const {
  const int m = basis_.size();
  std::vector<double> decay(static_cast<std::size_t>(m), 1.0);
  for (int j = 3; j < m; ++j)
    decay[static_cast<std::size_t>(j)] =
        std::exp(-config_.mu * basis_.entry(j).k.ksq * dt);

  const std::vector<double> f1 = rhs(state, f(state.t));
  State next;
  next.t = state.t + dt;
  next.c.resize(state.c.size());

  if (config_.scheme == Scheme::ImexEuler) {
    for (std::size_t j = 0; j < next.c.size(); ++j)
      next.c[j] = decay[j] * (state.c[j] + dt * f1[j]);
  } else {
    State predictor;
    predictor.t = next.t;
    predictor.c.resize(state.c.size());
    for (std::size_t j = 0; j < next.c.size(); ++j)
      predictor.c[j] = decay[j] * (state.c[j] + dt * f1[j]);
    const std::vector<double> f2 = rhs(predictor, f(predictor.t));
    for (std::size_t j = 0; j < next.c.size(); ++j)
      next.c[j] = decay[j] * state.c[j] + 0.5 * dt * (decay[j] * f1[j] + f2[j]);
  }

  for (double v : next.c)
    if (!std::isfinite(v))
      throw BlowUpError("time step produced a non-finite coefficient", state.t);
  return next;
}

GalerkinSolver::PhiRouteCheck GalerkinSolver::phi_route_check(const State& state) const {
  const Form u = basis_.velocity_field(state.c);
  const ScalarField g = basis_.divergence_field(state.c);
  const auto h = basis_.harmonic_part(state.c);

  Form grad_g(lattice_, 2);
  for (int a = 0; a < 3; ++a) grad_g.component(a) = partial_derivative(g, a);
  const Form phi_grad = parametrix(grad_g);

  Form base(lattice_, 2);
  const std::size_t zero = lattice_->index_of({0, 0, 0});
  for (int a = 0; a < 3; ++a) base.component(a).coeffs()[zero] = cplx{h[a], 0.0};

  PhiRouteCheck check;
  check.residual_compose = l2_norm(u - (base - phi_grad));
  check.residual_printed = l2_norm(u - (base + phi_grad));
  check.compose_matches = check.residual_compose <= check.residual_printed;
  return check;
}

Form GalerkinSolver::reconstruct_u(const State& state) const {
  Form u = basis_.velocity_field(state.c);
  const PhiRouteCheck check = phi_route_check(state);
  const double best = std::min(check.residual_compose, check.residual_printed);
  const double scale = std::max(l2_norm(u), 1e-30);
  if (best > config_.tol.reconstruct_rel * scale) {
    std::ostringstream msg;
    msg << "reconstruction cross-check failed: parametrix-route residual " << best
        << " exceeds " << config_.tol.reconstruct_rel << " * |u| = "
        << config_.tol.reconstruct_rel * scale;
    throw InternalConsistencyError(msg.str());
  }
  return u;
}

Form GalerkinSolver::recover_pressure(const State& state, const Form& f_at_t) const {
  const Form u = basis_.velocity_field(state.c);
  const Form w = f_at_t - n2(u, config_.nonlinearity);
  Form complement = w - helmholtz_project(w);
  // A complement at round-off scale relative to w is projection noise; its
  // unique mean-free rot-preimage is zero.
  if (l2_norm(complement) <= 1e-13 * std::max(l2_norm(w), 1.0))
    return Form(lattice_, 1);
  return solve_pressure(complement, config_.tol.pressure_rel);
}

StepDiagnostics GalerkinSolver::diagnostics(const State& state,
                                            const Form& f_at_t) const {
  const RhsFields fields = assemble(state, f_at_t);
  StepDiagnostics d;
  d.t = state.t;
  d.g_l2 = l2_norm(fields.g);
  d.grad_g_l2 = std::sqrt(frac_gradient_norm_sq(fields.g, 1));
  d.u_l2 = vec_norm(state.c);  // basis is orthonormal
  d.h_abs = std::hypot(fields.h[0], fields.h[1], fields.h[2]);
  d.pair_forcing = l2_inner(fields.div_f, fields.g);
  d.pair_quadratic = l2_inner(fields.quadratic, fields.g);
  d.pair_cubic = l2_inner(fields.cubic, fields.g);
  d.pair_transport = l2_inner(fields.transport, fields.g);
  d.int_g_cubed = d.pair_quadratic;
  d.divf_dual_sq = dual_v1_norm(fields.div_f);
  d.divf_dual_sq *= d.divf_dual_sq;
  d.cubic_residual = std::abs(d.pair_cubic + 0.5 * d.int_g_cubed);
  d.transport_residual = std::abs(d.pair_transport);
  return d;
}

double GalerkinSolver::enriched_test_residual(const State& state, const Form& f_at_t,
                                              int extra_modes) const {
  const int available = GalerkinBasis::available_size(*lattice_);
  const int enriched_size = std::min(available, basis_.size() + extra_modes);
  if (enriched_size <= basis_.size()) return 0.0;
  const GalerkinBasis enriched(lattice_, enriched_size);

  const RhsFields fields = assemble(state, f_at_t);
  const double volume = torus_volume();
  const double tau = std::sqrt(0.5 * volume);
  const auto& w = fields.w.coeffs();
  double worst = 0.0;
  for (int j = basis_.size(); j < enriched.size(); ++j) {
    const BasisEntry& e = enriched.entry(j);
    const double knorm = std::sqrt(static_cast<double>(e.k.ksq));
    const cplx wk = w[e.flat];
    const double value = (e.kind == BasisEntry::Kind::GradCos)
                             ? -volume * wk.real() / (knorm * tau)
                             : volume * wk.imag() / (knorm * tau);
    worst = std::max(worst, std::abs(value));
  }
  return worst;
}

Trajectory GalerkinSolver::run(const Form& u0, const ForcingProvider& f) const {
  Trajectory traj;
  traj.config = config_;

  State state = initial_state(u0);
  const double initial_norm = std::max(vec_norm(state.c), 1.0);
  traj.steps.push_back(diagnostics(state, f(0.0)));
  traj.snapshots.push_back({state.t, state});

  const double horizon = config_.horizon;
  long step_index = 0;
  double max_g = traj.steps.front().g_l2;
  std::size_t max_g_snapshot = 0;

  while (state.t < horizon - 1e-12 * std::max(1.0, horizon)) {
    const double h = std::min(config_.dt, horizon - state.t);
    try {
      state = step(state, f, h);
    } catch (const BlowUpError& err) {
      traj.blew_up = true;
      traj.blowup_reason = err.what();
      break;
    }
    ++step_index;
    const double norm = vec_norm(state.c);
    if (norm > config_.tol.blowup_factor * initial_norm) {
      traj.blew_up = true;
      std::ostringstream msg;
      msg << "state norm " << norm << " exceeded " << config_.tol.blowup_factor
          << " times the initial scale";
      traj.blowup_reason = msg.str();
      break;
    }
    traj.steps.push_back(diagnostics(state, f(state.t)));
    const bool due = (step_index % config_.snapshot_stride) == 0;
    const bool final_node = state.t >= horizon - 1e-12 * std::max(1.0, horizon);
    if (due || final_node) {
      traj.snapshots.push_back({state.t, state});
      if (traj.steps.back().g_l2 > max_g) {
        max_g = traj.steps.back().g_l2;
        max_g_snapshot = traj.snapshots.size() - 1;
      }
    }
  }

  traj.achieved_time = traj.steps.back().t;
  if (!traj.snapshots.empty()) {
    const PhiRouteCheck check =
        phi_route_check(traj.snapshots[max_g_snapshot].state);
    traj.phi_route_compose_sign = check.compose_matches;
  }
  return traj;
}

}  // namespace t3ns
