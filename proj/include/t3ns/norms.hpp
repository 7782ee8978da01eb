#pragma once

#include "t3ns/form.hpp"
#include "t3ns/galerkin.hpp"

namespace t3ns {

/// Volume of the torus, (2 pi)^3. Every norm below carries it explicitly.
double torus_volume();

double mean_value(const ScalarField& u);

double l2_inner(const ScalarField& a, const ScalarField& b);
double l2_inner(const Form& a, const Form& b);
double l2_norm(const ScalarField& u);
double l2_norm(const Form& u);

/// Quadrature route for the L2 norm (collocation-grid Riemann sum, exact
/// for truncated fields); used to audit the Parseval route.
double l2_norm_quadrature(const ScalarField& u);

/// Squared L2 norm of the order-m fractional gradient via the |k|^(2m)
/// multiplier.
double frac_gradient_norm_sq(const Form& u, int m);
double frac_gradient_norm_sq(const ScalarField& u, int m);

/// Sobolev norm: sqrt of the sum of the squared fractional-gradient norms
/// of orders 0..s.
double sobolev_norm(const Form& u, int s);
double sobolev_norm(const ScalarField& u, int s);

/// Dual norm on the mean-free test space: the (1+|k|^2)^(-1) multiplier.
double dual_v1_norm(const ScalarField& u);

/// Per-node row of the integrated energy identity: the kinetic term, the
/// trapezoid increments of dissipation and of every right-side pairing, and
/// the running residual (identity left side minus right side).
struct EnergyLedgerRow {
  double t = 0.0;
  double kinetic = 0.0;          // |g|^2
  double dissipation_inc = 0.0;  // 2 mu |grad g|^2, trapezoid increment
  double forcing_inc = 0.0;
  double quadratic_inc = 0.0;
  double cubic_inc = 0.0;
  double transport_inc = 0.0;
  double residual = 0.0;
};

struct EnergyLedger {
  std::vector<EnergyLedgerRow> rows;
  double max_abs_residual = 0.0;
  /// Smallest constant for which the Gronwall-side majorant (forcing,
  /// quadratic and sixth-power terms) dominates the identity's left side at
  /// every node; reported, never asserted.
  double empirical_gronwall_constant = 0.0;
};

EnergyLedger audit_energy(const Trajectory& traj);

/// One term of the discrete Bochner-Sobolev composite: spatial order
/// l (+m) on the j-th time derivative of g.
struct BochnerTerm {
  int l = 0, m = 0, j = 0;
  double sup_c = 0.0;     // C(I, L2) norm over valid snapshot nodes
  double l2_time = 0.0;   // sqrt of the time-integrated next-order term
};

struct BochnerReport {
  int k = 0, s = 0;
  int fd_order = 2;  // finite-difference order used for time derivatives
  std::vector<BochnerTerm> terms;
  double total = 0.0;
};

/// Evaluates every term of the B^{k,2s,s} composite norm of g along the
/// stored snapshots; time derivatives use centered differences, so the
/// snapshot stride must leave at least 2j+1 usable nodes.
BochnerReport bochner_norm(const Trajectory& traj, int k, int s);

}  // namespace t3ns
