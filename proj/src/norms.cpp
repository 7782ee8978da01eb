#include "t3ns/norms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace t3ns {

double torus_volume() {
  const double two_pi = 2.0 * std::numbers::pi;
  return two_pi * two_pi * two_pi;
}

double mean_value(const ScalarField& u) {
  return u.coeff({0, 0, 0}).real();
}

double l2_inner(const ScalarField& a, const ScalarField& b) {
  if (!a.lattice().same_as(b.lattice()))
    throw std::invalid_argument("l2_inner: lattice mismatch");
  double s = 0.0;
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  for (std::size_t i = 0; i < ca.size(); ++i)
    s += ca[i].real() * cb[i].real() + ca[i].imag() * cb[i].imag();
  return torus_volume() * s;
}

double l2_inner(const Form& a, const Form& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("l2_inner: degree mismatch");
  double s = 0.0;
  for (int i = 0; i < a.components(); ++i) s += l2_inner(a.component(i), b.component(i));
  return s;
}

double l2_norm(const ScalarField& u) { return std::sqrt(l2_inner(u, u)); }

double l2_norm(const Form& u) { return std::sqrt(l2_inner(u, u)); }

double l2_norm_quadrature(const ScalarField& u) {
  const auto samples = transform_to_grid(u);
  double s = 0.0;
  for (double v : samples) s += v * v;
  return std::sqrt(s * torus_volume() / static_cast<double>(samples.size()));
}

namespace {

double weighted_coeff_energy(const ScalarField& u, int m) {
  const auto& modes = u.lattice().modes();
  const auto& c = u.coeffs();
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    double w = 1.0;
    for (int p = 0; p < m; ++p) w *= modes[i].ksq;
    s += w * std::norm(c[i]);
  }
  return torus_volume() * s;
}

}  // namespace

double frac_gradient_norm_sq(const ScalarField& u, int m) {
  return weighted_coeff_energy(u, m);
}

double frac_gradient_norm_sq(const Form& u, int m) {
  double s = 0.0;
  for (int i = 0; i < u.components(); ++i) s += weighted_coeff_energy(u.component(i), m);
  return s;
}

double sobolev_norm(const Form& u, int s) {
  if (s < 0) throw std::invalid_argument("sobolev_norm: order must be non-negative");
  double total = 0.0;
  for (int m = 0; m <= s; ++m) total += frac_gradient_norm_sq(u, m);
  return std::sqrt(total);
}

double sobolev_norm(const ScalarField& u, int s) {
  if (s < 0) throw std::invalid_argument("sobolev_norm: order must be non-negative");
  double total = 0.0;
  for (int m = 0; m <= s; ++m) total += frac_gradient_norm_sq(u, m);
  return std::sqrt(total);
}

double dual_v1_norm(const ScalarField& u) {
  const auto& modes = u.lattice().modes();
  const auto& c = u.coeffs();
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += std::norm(c[i]) / (1.0 + modes[i].ksq);
  return std::sqrt(torus_volume() * s);
}

EnergyLedger audit_energy(const Trajectory& traj) {
  EnergyLedger ledger;
  if (traj.steps.empty()) return ledger;
  const double mu = traj.config.mu;
  const auto& steps = traj.steps;

  auto node_work = [](const StepDiagnostics& d) {
    return d.pair_forcing - d.pair_quadratic - d.pair_cubic - d.pair_transport;
  };
  auto node_dissipation = [mu](const StepDiagnostics& d) {
    return 2.0 * mu * d.grad_g_l2 * d.grad_g_l2;
  };

  const double kinetic0 = steps.front().g_l2 * steps.front().g_l2;
  double dissipation_cum = 0.0;
  double work_cum = 0.0;
  // Majorant bookkeeping for the Gronwall-side estimate.
  double forcing_cum = 0.0, g2_cum = 0.0, g6_cum = 0.0;
  double c_needed = 0.0;

  for (std::size_t n = 0; n < steps.size(); ++n) {
    const auto& d = steps[n];
    EnergyLedgerRow row;
    row.t = d.t;
    row.kinetic = d.g_l2 * d.g_l2;
    if (n > 0) {
      const auto& prev = steps[n - 1];
      const double h = d.t - prev.t;
      row.dissipation_inc = 0.5 * h * (node_dissipation(prev) + node_dissipation(d));
      row.forcing_inc = h * (prev.pair_forcing + d.pair_forcing);
      row.quadratic_inc = -h * (prev.pair_quadratic + d.pair_quadratic);
      row.cubic_inc = -h * (prev.pair_cubic + d.pair_cubic);
      row.transport_inc = -h * (prev.pair_transport + d.pair_transport);
      dissipation_cum += row.dissipation_inc;
      work_cum += h * (node_work(prev) + node_work(d));  // trapezoid times 2
      forcing_cum += 0.5 * h * (prev.divf_dual_sq + d.divf_dual_sq);
      g2_cum += 0.5 * h *
                (prev.g_l2 * prev.g_l2 + d.g_l2 * d.g_l2);
      g6_cum += 0.5 * h *
                (std::pow(prev.g_l2, 6.0) + std::pow(d.g_l2, 6.0));
    }
    row.residual = (row.kinetic + dissipation_cum) - (kinetic0 + work_cum);
    ledger.max_abs_residual = std::max(ledger.max_abs_residual, std::abs(row.residual));
    if (n > 0) {
      const double lhs = row.kinetic + 0.5 * dissipation_cum;  // mu, not 2 mu
      const double fixed = kinetic0 + (4.0 / mu) * forcing_cum + 0.25 * mu * g2_cum;
      const double coeff = 2.0 * (g2_cum + g6_cum);
      if (coeff > 0.0)
        c_needed = std::max(c_needed, (lhs - fixed) / coeff);
    }
    ledger.rows.push_back(row);
  }
  ledger.empirical_gronwall_constant = std::max(0.0, c_needed);
  return ledger;
}

BochnerReport bochner_norm(const Trajectory& traj, int k, int s) {
  if (k < 0 || s < 0) throw std::invalid_argument("bochner_norm: negative index");
  BochnerReport report;
  report.k = k;
  report.s = s;
  const auto& snaps = traj.snapshots;
  if (snaps.size() < 2)
    throw std::invalid_argument("bochner_norm: trajectory stores too few snapshots");
  const double dt_snap = snaps[1].t - snaps[0].t;
  for (std::size_t n = 1; n < snaps.size(); ++n) {
    const double h = snaps[n].t - snaps[n - 1].t;
    if (std::abs(h - dt_snap) > 1e-9 * std::max(1.0, dt_snap))
      throw std::invalid_argument("bochner_norm: snapshots are not uniformly spaced");
  }

  GalerkinSolver solver(traj.config);
  std::vector<ScalarField> g_series;
  g_series.reserve(snaps.size());
  for (const auto& snap : snaps) g_series.push_back(solver.g_field(snap.state));

  // Time-derivative series by iterated centered differences (order 2).
  const int j_max = s;
  std::vector<std::vector<ScalarField>> dt_series(static_cast<std::size_t>(j_max) + 1);
  dt_series[0] = g_series;
  for (int j = 1; j <= j_max; ++j) {
    const auto& prev = dt_series[static_cast<std::size_t>(j) - 1];
    if (prev.size() < 3)
      throw std::invalid_argument(
          "bochner_norm: insufficient snapshot density for requested time derivative");
    std::vector<ScalarField> next;
    for (std::size_t n = 1; n + 1 < prev.size(); ++n) {
      ScalarField d = prev[n + 1];
      d -= prev[n - 1];
      d *= 1.0 / (2.0 * dt_snap);
      next.push_back(std::move(d));
    }
    dt_series[static_cast<std::size_t>(j)] = std::move(next);
  }

  double total_sq = 0.0;
  for (int j = 0; 2 * j <= 2 * s; ++j) {
    for (int m = 0; m + 2 * j <= 2 * s; ++m) {
      for (int l = 0; l <= k; ++l) {
        const auto& series = dt_series[static_cast<std::size_t>(j)];
        BochnerTerm term;
        term.l = l;
        term.m = m;
        term.j = j;
        double int_sq = 0.0;
        double prev_sq = 0.0;
        for (std::size_t n = 0; n < series.size(); ++n) {
          const double sup_sq = frac_gradient_norm_sq(series[n], l + m);
          term.sup_c = std::max(term.sup_c, std::sqrt(sup_sq));
          const double next_sq = frac_gradient_norm_sq(series[n], l + m + 1);
          if (n > 0) int_sq += 0.5 * dt_snap * (prev_sq + next_sq);
          prev_sq = next_sq;
        }
        term.l2_time = std::sqrt(int_sq);
        total_sq += term.sup_c * term.sup_c + int_sq;
        report.terms.push_back(term);
      }
    }
  }
  report.total = std::sqrt(total_sq);
  return report;
}

}  // namespace t3ns
