#pragma once

#include "t3ns/config.hpp"
#include "t3ns/norms.hpp"

namespace t3ns {

/// Process exit codes shared by the batch front end.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBlowUp = 2,
  kAuditFailure = 3,
  kConfigError = 4,
};

struct ExperimentResult {
  int exit_code = kOk;
  nlohmann::ordered_json report;
  Trajectory trajectory;
};

/// Executes one run: integrates, audits every pinned invariant, and writes
/// trajectory.csv, ledger.csv, field snapshots, report.json and the
/// canonical configuration under spec.out_dir. A run never reports success
/// with a failed audit.
ExperimentResult run_experiment(const RunSpec& spec);

/// Refinement study: reruns the base spec with `field` (dt, K or M)
/// replaced by each value, writing per-run artifacts and a sweep.csv
/// summary with observed convergence orders.
int run_sweep(const RunSpec& base, const std::string& field,
              const std::vector<double>& values);

/// Re-checks the stored snapshots of a finished run directory: Hermitian
/// symmetry, the rot/div/mean constraints and the g = div u consistency.
int audit_stored(const std::string& dir);

/// Applies the Hodge/Helmholtz toolbox to a stored field file and writes
/// the parts plus a norm table.
int decompose_stored(const std::string& input, const std::string& out_dir,
                     double pressure_tol);

/// Shortest round-trip decimal formatting used for all CSV output.
std::string format_double(double v);

}  // namespace t3ns
