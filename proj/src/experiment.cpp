#include "t3ns/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "t3ns/generators.hpp"
#include "t3ns/serialize.hpp"

namespace t3ns {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

constexpr double kCubicTol = 1e-9;
constexpr double kTransportTol = 1e-11;
constexpr double kConstraintTol = 1e-11;
constexpr double kTiny = 1e-300;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

struct InvariantAudit {
  double max_cubic_scaled = 0.0;
  double max_transport_scaled = 0.0;
  double max_rot_u_rel = 0.0;
  double max_div_p_rel = 0.0;
  double max_mean_g_rel = 0.0;
  bool cubic_enforced = true;  // the cubic identity is exact only alias-free
  bool reconstruction_ok = true;
  bool pressure_ok = true;
  std::string failure_detail;

  bool cubic_ok() const { return !cubic_enforced || max_cubic_scaled <= kCubicTol; }
  bool transport_ok() const { return max_transport_scaled <= kTransportTol; }
  bool constraints_ok() const {
    return max_rot_u_rel <= kConstraintTol && max_div_p_rel <= kConstraintTol &&
           max_mean_g_rel <= kConstraintTol;
  }
  bool all_ok() const {
    return cubic_ok() && transport_ok() && constraints_ok() && reconstruction_ok &&
           pressure_ok;
  }
};

std::string trajectory_csv(const Trajectory& traj, const EnergyLedger& ledger) {
  std::ostringstream out;
  out << "time,g_l2,grad_g_l2,u_l2,h_abs,energy_residual,cubic_residual\n";
  for (std::size_t n = 0; n < traj.steps.size(); ++n) {
    const auto& d = traj.steps[n];
    const double residual = n < ledger.rows.size() ? ledger.rows[n].residual : 0.0;
    out << format_double(d.t) << ',' << format_double(d.g_l2) << ','
        << format_double(d.grad_g_l2) << ',' << format_double(d.u_l2) << ','
        << format_double(d.h_abs) << ',' << format_double(residual) << ','
        << format_double(d.cubic_residual) << '\n';
  }
  return out.str();
}

std::string ledger_csv(const EnergyLedger& ledger) {
  std::ostringstream out;
  out << "time,kinetic,dissipation_inc,forcing_inc,quadratic_inc,cubic_inc,"
         "transport_inc,residual\n";
  for (const auto& row : ledger.rows) {
    out << format_double(row.t) << ',' << format_double(row.kinetic) << ','
        << format_double(row.dissipation_inc) << ',' << format_double(row.forcing_inc)
        << ',' << format_double(row.quadratic_inc) << ',' << format_double(row.cubic_inc)
        << ',' << format_double(row.transport_inc) << ',' << format_double(row.residual)
        << '\n';
  }
  return out.str();
}

}  // namespace

ExperimentResult run_experiment(const RunSpec& spec) {
  ExperimentResult result;
  GalerkinSolver solver(spec.solver);
  const auto lattice = solver.lattice_ptr();
  const Form u0 = make_initial(spec, lattice);
  const ForcingProvider forcing = make_forcing(spec, lattice);

  Trajectory traj = solver.run(u0, forcing);
  const EnergyLedger ledger = audit_energy(traj);

  InvariantAudit audit;
  audit.cubic_enforced = spec.solver.dealias;
  for (const auto& d : traj.steps) {
    const double g3 = 1.0 + d.g_l2 * d.g_l2 * d.g_l2;
    audit.max_cubic_scaled = std::max(audit.max_cubic_scaled, d.cubic_residual / g3);
    const double tdenom = std::max(d.g_l2 * d.g_l2 * (1.0 + d.h_abs), kTiny);
    if (d.g_l2 > 0.0)
      audit.max_transport_scaled =
          std::max(audit.max_transport_scaled, d.transport_residual / tdenom);
  }

  const fs::path out_dir(spec.out_dir);
  fs::create_directories(out_dir / "snapshots");

  // Snapshot export with constraint audits along the way.
  std::optional<ManufacturedCase> exact;
  if (!spec.manufactured.empty() &&
      (spec.initial.kind == InitialSpec::Kind::Manufactured ||
       spec.forcing.kind == ForcingSpec::Kind::Manufactured))
    exact = manufactured_case(spec.manufactured, lattice, spec.solver);
  double terminal_error = 0.0, max_error = 0.0, terminal_p_error = 0.0;

  for (std::size_t n = 0; n < traj.snapshots.size(); ++n) {
    const auto& snap = traj.snapshots[n];
    const ScalarField g = solver.g_field(snap.state);
    nlohmann::ordered_json doc;
    doc["t"] = snap.t;
    doc["g"] = to_json(g);
    Form u(lattice, 2);
    try {
      u = solver.reconstruct_u(snap.state);
    } catch (const InternalConsistencyError& err) {
      audit.reconstruction_ok = false;
      audit.failure_detail = err.what();
      u = solver.basis().velocity_field(snap.state.c);
    }
    doc["u"] = to_json(u);

    const double u_norm = std::max(l2_norm(u), kTiny);
    audit.max_rot_u_rel =
        std::max(audit.max_rot_u_rel, l2_norm(apply_d_star(u)) / u_norm);
    const double g_norm = l2_norm(g);
    audit.max_mean_g_rel = std::max(
        audit.max_mean_g_rel,
        std::abs(mean_value(g)) * std::sqrt(torus_volume()) / std::max(g_norm, kTiny));

    try {
      const Form p = solver.recover_pressure(snap.state, forcing(snap.t));
      doc["p"] = to_json(p);
      const double p_norm = std::max(l2_norm(p), kTiny);
      audit.max_div_p_rel =
          std::max(audit.max_div_p_rel, l2_norm(apply_d_star(p)) / p_norm);
      if (exact && snap.t == traj.snapshots.back().t)
        terminal_p_error = l2_norm(p - exact->p_exact(snap.t));
    } catch (const PreconditionError& err) {
      audit.pressure_ok = false;
      audit.failure_detail = err.what();
    }

    if (exact) {
      const double err = l2_norm(u - exact->u_exact(snap.t));
      max_error = std::max(max_error, err);
      if (snap.t == traj.snapshots.back().t) terminal_error = err;
    }

    std::ostringstream name;
    name << "snapshot_";
    name.width(6);
    name.fill('0');
    name << n << ".json";
    write_text(out_dir / "snapshots" / name.str(), doc.dump(2) + "\n");
  }

  write_text(out_dir / "config_canonical.json", canonical_config(spec).dump(2) + "\n");
  write_text(out_dir / "trajectory.csv", trajectory_csv(traj, ledger));
  write_text(out_dir / "ledger.csv", ledger_csv(ledger));

  nlohmann::ordered_json report;
  report["config"] = canonical_config(spec);
  report["horizon"] = {{"requested", spec.solver.horizon},
                       {"achieved", traj.achieved_time}};
  report["blow_up"] = traj.blew_up;
  if (traj.blew_up) report["blow_up_reason"] = traj.blowup_reason;
  report["phi_route"] =
      traj.phi_route_compose_sign ? "laplacian-composition" : "printed-gradient";
  report["energy"] = {
      {"max_abs_residual", ledger.max_abs_residual},
      {"empirical_gronwall_constant", ledger.empirical_gronwall_constant}};

  // Weak-formulation residual against a test class enriched beyond the span,
  // evaluated at the terminal state.
  {
    const auto& last = traj.snapshots.back();
    report["enriched_test"] = {
        {"extra_modes", 2 * spec.solver.basis_size},
        {"max_residual", solver.enriched_test_residual(
                             last.state, forcing(last.t), 2 * spec.solver.basis_size)}};
  }

  // Bochner-Sobolev composite of g along the stored snapshots, when the
  // snapshot spacing supports the centered time differences.
  try {
    const BochnerReport bochner = bochner_norm(traj, 1, 1);
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& term : bochner.terms)
      terms.push_back({{"l", term.l},
                       {"m", term.m},
                       {"j", term.j},
                       {"sup_c", term.sup_c},
                       {"l2_time", term.l2_time}});
    report["bochner_k1_s1"] = {{"total", bochner.total},
                               {"fd_order", bochner.fd_order},
                               {"terms", std::move(terms)}};
  } catch (const std::invalid_argument& err) {
    report["bochner_k1_s1"] = {{"unavailable", err.what()}};
  }

  nlohmann::ordered_json audits;
  audits["max_cubic_residual_scaled"] = audit.max_cubic_scaled;
  audits["cubic_identity_enforced"] = audit.cubic_enforced;
  audits["max_transport_residual_scaled"] = audit.max_transport_scaled;
  audits["max_rot_u_rel"] = audit.max_rot_u_rel;
  audits["max_div_p_rel"] = audit.max_div_p_rel;
  audits["max_mean_g_rel"] = audit.max_mean_g_rel;
  audits["pass"] = {
      {"cubic_identity", audit.cubic_ok()},
      {"transport_orthogonality", audit.transport_ok()},
      {"constraints", audit.constraints_ok()},
      {"reconstruction", audit.reconstruction_ok},
      {"pressure", audit.pressure_ok},
  };
  if (!audit.failure_detail.empty()) audits["failure_detail"] = audit.failure_detail;
  report["audits"] = std::move(audits);

  if (exact) {
    report["manufactured"] = {{"case", spec.manufactured},
                              {"terminal_error_l2", terminal_error},
                              {"max_error_l2", max_error},
                              {"terminal_pressure_error_l2", terminal_p_error}};
  }

  int code = kOk;
  if (!audit.all_ok()) code = kAuditFailure;
  if (traj.blew_up) code = kBlowUp;
  report["status"] = code == kOk ? "ok" : (code == kBlowUp ? "blow-up" : "audit-failure");
  write_text(out_dir / "report.json", report.dump(2) + "\n");

  result.exit_code = code;
  result.report = std::move(report);
  result.trajectory = std::move(traj);
  return result;
}

int run_sweep(const RunSpec& base, const std::string& field,
              const std::vector<double>& values) {
  if (field != "dt" && field != "K" && field != "M")
    throw ConfigError("sweep: field must be one of dt, K, M");
  if (values.empty()) throw ConfigError("sweep: no values given");

  struct Row {
    double value = 0.0;
    double achieved = 0.0;
    double terminal_g = 0.0;
    double energy_residual = 0.0;
    double manufactured_error = std::numeric_limits<double>::quiet_NaN();
    int code = kOk;
  };
  std::vector<Row> rows;

  for (double v : values) {
    RunSpec spec = base;
    if (field == "dt") {
      spec.solver.dt = v;
    } else if (field == "K") {
      spec.solver.truncation = static_cast<int>(v);
    } else {
      spec.solver.basis_size = static_cast<int>(v);
    }
    std::ostringstream dir;
    dir << base.out_dir << "/sweep_" << field << "_" << format_double(v);
    spec.out_dir = dir.str();
    const ExperimentResult res = run_experiment(spec);
    Row row;
    row.value = v;
    row.achieved = res.report["horizon"]["achieved"].get<double>();
    row.terminal_g = res.trajectory.steps.back().g_l2;
    row.energy_residual = res.report["energy"]["max_abs_residual"].get<double>();
    if (res.report.contains("manufactured"))
      row.manufactured_error =
          res.report["manufactured"]["terminal_error_l2"].get<double>();
    row.code = res.exit_code;
    rows.push_back(row);
  }

  std::ostringstream csv;
  csv << "field,value,achieved_time,terminal_g_l2,energy_max_residual,"
         "manufactured_terminal_error,order_energy,order_manufactured\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double order_energy = std::numeric_limits<double>::quiet_NaN();
    double order_mms = std::numeric_limits<double>::quiet_NaN();
    if (i > 0 && rows[i - 1].energy_residual > 0.0 && rows[i].energy_residual > 0.0)
      order_energy = std::log2(rows[i - 1].energy_residual / rows[i].energy_residual);
    if (i > 0 && rows[i - 1].manufactured_error > 0.0 && rows[i].manufactured_error > 0.0)
      order_mms = std::log2(rows[i - 1].manufactured_error / rows[i].manufactured_error);
    csv << field << ',' << format_double(rows[i].value) << ','
        << format_double(rows[i].achieved) << ',' << format_double(rows[i].terminal_g)
        << ',' << format_double(rows[i].energy_residual) << ','
        << format_double(rows[i].manufactured_error) << ','
        << format_double(order_energy) << ',' << format_double(order_mms) << '\n';
  }
  fs::create_directories(base.out_dir);
  write_text(fs::path(base.out_dir) / "sweep.csv", csv.str());

  int worst = kOk;
  for (const auto& row : rows) worst = std::max(worst, row.code);
  return worst;
}

int audit_stored(const std::string& dir) {
  const fs::path snapshots = fs::path(dir) / "snapshots";
  if (!fs::is_directory(snapshots))
    throw ConfigError("audit: no snapshots directory under " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(snapshots))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("audit: no snapshot files under " + dir);

  bool ok = true;
  auto check = [&ok](const std::string& label, double value, double tol) {
    const bool pass = value <= tol;
    ok = ok && pass;
    std::printf("%-32s %12.4e  (tol %8.1e)  %s\n", label.c_str(), value, tol,
                pass ? "PASS" : "FAIL");
  };

  double max_rot_u = 0.0, max_div_p = 0.0, max_mean_g = 0.0, max_gdiff = 0.0,
         max_mean_p = 0.0, max_herm = 0.0, max_cubic = 0.0, max_transport = 0.0;
  bool dealias_on = true;
  for (const auto& file : files) {
    std::ifstream in(file);
    nlohmann::json doc;
    in >> doc;
    const ScalarField g = scalar_field_from_json(doc.at("g"));
    const Form u = form_from_json(doc.at("u"));
    dealias_on = dealias_on && g.lattice().dealias_active();
    const double u_norm = std::max(l2_norm(u), kTiny);
    const double g_norm = std::max(l2_norm(g), kTiny);
    for (int a = 0; a < 3; ++a)
      max_herm = std::max(max_herm, u.component(a).hermitian_error());
    max_herm = std::max(max_herm, g.hermitian_error());
    max_rot_u = std::max(max_rot_u, l2_norm(apply_d_star(u)) / u_norm);
    max_mean_g = std::max(max_mean_g,
                          std::abs(mean_value(g)) * std::sqrt(torus_volume()) / g_norm);
    max_gdiff = std::max(max_gdiff,
                         l2_norm(apply_d(u).component(0) - g) / g_norm);

    // the exact pairing identities, recomputed from the stored fields alone
    const std::size_t zero = g.lattice().index_of({0, 0, 0});
    Form u_fluct = u;
    std::array<double, 3> h{0.0, 0.0, 0.0};
    for (int a = 0; a < 3; ++a) {
      h[a] = u.component(a).coeff(zero).real();
      u_fluct.component(a).coeffs()[zero] = cplx{0.0, 0.0};
    }
    double pair_cubic = 0.0, pair_transport = 0.0;
    for (int a = 0; a < 3; ++a) {
      const ScalarField dg = partial_derivative(g, a);
      pair_cubic += l2_inner(pointwise_product(dg, u_fluct.component(a)), g);
      pair_transport += h[a] * l2_inner(dg, g);
    }
    const double int_g3 = l2_inner(pointwise_product(g, g), g);
    const double g_l2 = l2_norm(g);
    max_cubic = std::max(max_cubic, std::abs(pair_cubic + 0.5 * int_g3) /
                                        (1.0 + g_l2 * g_l2 * g_l2));
    const double habs = std::hypot(h[0], h[1], h[2]);
    if (g_l2 > 0.0)
      max_transport = std::max(max_transport, std::abs(pair_transport) /
                                                  (g_l2 * g_l2 * (1.0 + habs)));

    if (doc.contains("p")) {
      const Form p = form_from_json(doc.at("p"));
      const double p_norm = std::max(l2_norm(p), kTiny);
      max_div_p = std::max(max_div_p, l2_norm(apply_d_star(p)) / p_norm);
      max_mean_p = std::max(max_mean_p,
                            l2_norm(project_harmonic(p)) / p_norm);
    }
  }
  std::printf("audited %zu snapshots under %s\n", files.size(), dir.c_str());
  check("hermitian defect", max_herm, 1e-10);
  check("rot u (relative)", max_rot_u, kConstraintTol);
  check("div p (relative)", max_div_p, kConstraintTol);
  check("mean g (relative)", max_mean_g, kConstraintTol);
  check("mean p (relative)", max_mean_p, kConstraintTol);
  check("g = div u (relative)", max_gdiff, 1e-10);
  if (dealias_on) {
    check("cubic identity (scaled)", max_cubic, kCubicTol);
  } else {
    std::printf("%-32s %12.4e  (informational: dealiasing off)\n",
                "cubic identity (scaled)", max_cubic);
  }
  check("transport pairing (scaled)", max_transport, kTransportTol);
  return ok ? kOk : kAuditFailure;
}

int decompose_stored(const std::string& input, const std::string& out_dir,
                     double pressure_tol) {
  std::ifstream in(input);
  if (!in) throw ConfigError("decompose: cannot open " + input);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError(std::string("decompose: malformed JSON: ") + err.what());
  }
  const Form w = form_from_json(doc);
  fs::create_directories(out_dir);
  const fs::path out(out_dir);

  nlohmann::ordered_json norms;
  norms["degree"] = w.degree();
  norms["l2"] = l2_norm(w);
  const Form harmonic = project_harmonic(w);
  write_text(out / "harmonic.json", to_json(harmonic).dump(2) + "\n");
  norms["l2_harmonic"] = l2_norm(harmonic);

  if (w.degree() == 2) {
    const Form rotfree = helmholtz_project(w);
    const Form complement = w - rotfree;
    write_text(out / "helmholtz.json", to_json(rotfree).dump(2) + "\n");
    write_text(out / "complement.json", to_json(complement).dump(2) + "\n");
    norms["l2_helmholtz"] = l2_norm(rotfree);
    norms["l2_complement"] = l2_norm(complement);
    norms["orthogonality"] = l2_inner(rotfree, complement);
    norms["rot_of_helmholtz"] = l2_norm(apply_d_star(rotfree));
    // a complement at round-off scale has the zero form as its rot-preimage
    const Form p = l2_norm(complement) <= 1e-13 * std::max(l2_norm(w), 1.0)
                       ? Form(w.lattice_ptr(), 1)
                       : solve_pressure(complement, pressure_tol);
    write_text(out / "pressure.json", to_json(p).dump(2) + "\n");
    norms["l2_pressure"] = l2_norm(p);
    norms["rot_p_matches_complement"] = l2_norm(apply_d(p) - complement);
  } else {
    write_text(out / "parametrix.json", to_json(parametrix(w)).dump(2) + "\n");
    norms["l2_parametrix"] = l2_norm(parametrix(w));
  }
  write_text(out / "norms.json", norms.dump(2) + "\n");
  return kOk;
}

}  // namespace t3ns
