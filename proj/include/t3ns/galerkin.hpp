#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "t3ns/errors.hpp"
#include "t3ns/hodge.hpp"
#include "t3ns/nonlinear.hpp"

namespace t3ns {

enum class Scheme { ImexHeun, ImexEuler };

struct Tolerances {
  /// Halt the run when |c| grows past this factor times max(|c(0)|, 1).
  double blowup_factor = 1e6;
  /// Relative tolerance on |P2 F| for the pressure solve.
  double pressure_rel = 1e-8;
  /// Relative Hermitian-symmetry tolerance for transforms.
  double hermitian = 1e-10;
  /// Relative tolerance of the reconstruction cross-check.
  double reconstruct_rel = 1e-9;
};

struct SolverConfig {
  double mu = 0.1;
  double horizon = 1.0;
  double dt = 1e-3;
  int truncation = 4;  // K
  int basis_size = 20;  // M
  bool dealias = true;
  Scheme scheme = Scheme::ImexHeun;
  NonlinearityConfig nonlinearity;
  Tolerances tol;
  int snapshot_stride = 10;
  /// 0 keeps the natural (|k|^2, lattice) order; any other value shuffles
  /// the gradient entries with that seed (the span is unchanged).
  std::uint64_t basis_permutation_seed = 0;

  void validate() const;  // throws ConfigError naming the offending field
};

/// One element of the rot-free Galerkin basis.
struct BasisEntry {
  enum class Kind { Constant, GradCos, GradSin };
  Kind kind = Kind::Constant;
  int axis = 0;        // Constant only
  WaveIndex k;         // gradient entries
  std::size_t flat = 0;  // lattice index of k
};

/// L2-orthonormal basis of the rot-free subspace: the three constant fields
/// followed by normalized gradients of trigonometric modes ordered by
/// (|k|^2, lattice order), cos before sin. With dealiasing active the
/// gradient modes are restricted to the dealias band so every quadratic
/// Galerkin pairing is alias-exact.
class GalerkinBasis {
 public:
  GalerkinBasis(std::shared_ptr<const Lattice> lattice, int size,
                std::uint64_t permutation_seed = 0);

  static int available_size(const Lattice& lattice);

  int size() const { return static_cast<int>(entries_.size()); }
  const BasisEntry& entry(int j) const { return entries_[static_cast<std::size_t>(j)]; }
  const std::shared_ptr<const Lattice>& lattice_ptr() const { return lattice_; }
  const Lattice& lattice() const { return *lattice_; }

  /// b_j realized as a Form (diagnostics and tests).
  Form form(int j) const;

  /// g = div of the represented field; exactly mean-free.
  ScalarField divergence_field(const std::vector<double>& c) const;

  /// The represented rot-free field sum_j c_j b_j.
  Form velocity_field(const std::vector<double>& c) const;

  /// Harmonic part as a physical constant vector.
  std::array<double, 3> harmonic_part(const std::vector<double>& c) const;

  /// L2 projection coefficients of a degree-2 form.
  std::vector<double> project(const Form& u0) const;

 private:
  std::shared_ptr<const Lattice> lattice_;
  std::vector<BasisEntry> entries_;
};

struct State {
  double t = 0.0;
  std::vector<double> c;
};

using ForcingProvider = std::function<Form(double)>;

/// Per-node diagnostics recorded along a run: norms, the right-side pairing
/// values of the energy identity, and the residuals of the exact identities
/// audited at every step.
struct StepDiagnostics {
  double t = 0.0;
  double g_l2 = 0.0;
  double grad_g_l2 = 0.0;
  double u_l2 = 0.0;
  double h_abs = 0.0;
  double pair_forcing = 0.0;    // <div f, g>
  double pair_quadratic = 0.0;  // <g^2, g>
  double pair_cubic = 0.0;      // <grad g . (u - h), g>
  double pair_transport = 0.0;  // <grad g . h, g>
  double int_g_cubed = 0.0;     // integral of g^3
  double divf_dual_sq = 0.0;    // |div f|^2 in the (V^1)' multiplier norm
  double cubic_residual = 0.0;      // |pair_cubic + int_g_cubed / 2|
  double transport_residual = 0.0;  // |pair_transport|
};

struct TrajectorySnapshot {
  double t = 0.0;
  State state;
};

struct Trajectory {
  SolverConfig config;
  std::vector<StepDiagnostics> steps;        // one row per node, including t = 0
  std::vector<TrajectorySnapshot> snapshots; // every snapshot_stride steps plus final
  bool blew_up = false;
  double achieved_time = 0.0;
  std::string blowup_reason;
  /// Which parametrix route reproduced the represented field: true when the
  /// Laplacian-composition sign matched (u - harmonic part = -phi grad g).
  bool phi_route_compose_sign = true;
};

/// Semi-discretization of the reduced scalar problem over the rot-free
/// basis, with the harmonic part evolved as a separate 3-dim ODE. The time
/// stepper treats diffusion exactly per mode and the remaining terms with a
/// second-order explicit rule (first-order variant available).
class GalerkinSolver {
 public:
  explicit GalerkinSolver(SolverConfig config);

  const SolverConfig& config() const { return config_; }
  const GalerkinBasis& basis() const { return basis_; }
  const Lattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const Lattice>& lattice_ptr() const { return lattice_; }

  State initial_state(const Form& u0) const;

  /// Non-stiff right side (forcing plus quadratic terms) for every
  /// coefficient; the stiff diffusion factor is applied by the stepper.
  std::vector<double> rhs(const State& state, const Form& f_at_t) const;

  /// Time derivative of the harmonic part: the k = 0 coefficient of
  /// f - n2(u).
  std::array<double, 3> harmonic_rhs(const State& state, const Form& f_at_t) const;

  /// One step of the configured scheme; throws BlowUpError with the last
  /// valid time on NaN/overflow or configured norm growth.
  State step(const State& state, const ForcingProvider& f, double dt) const;

  ScalarField g_field(const State& state) const;
  std::array<double, 3> harmonic_part(const State& state) const;

  struct PhiRouteCheck {
    double residual_compose = 0.0;  // vs. parametrix(Laplacian route): -phi grad g
    double residual_printed = 0.0;  // vs. +phi grad g
    bool compose_matches = true;
  };
  PhiRouteCheck phi_route_check(const State& state) const;

  /// sum_j c_j b_j, cross-checked against the parametrix reconstruction
  /// from g; throws InternalConsistencyError beyond tolerance.
  Form reconstruct_u(const State& state) const;

  /// p with rot p = (I - P2)(f - n2(u)), divergence-free and mean-free.
  Form recover_pressure(const State& state, const Form& f_at_t) const;

  StepDiagnostics diagnostics(const State& state, const Form& f_at_t) const;

  /// Weak-formulation residual against gradient test modes beyond the span:
  /// the largest would-be coefficient derivative among the next extra_modes
  /// basis entries. Coefficients outside the span are identically zero along
  /// a trajectory, so this measures what a larger test class would add.
  double enriched_test_residual(const State& state, const Form& f_at_t,
                                int extra_modes) const;

  Trajectory run(const Form& u0, const ForcingProvider& f) const;

 private:
  struct RhsFields;
  RhsFields assemble(const State& state, const Form& f_at_t) const;

  SolverConfig config_;
  std::shared_ptr<const Lattice> lattice_;
  GalerkinBasis basis_;
};

}  // namespace t3ns
