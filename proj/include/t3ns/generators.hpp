#pragma once

#include <random>

#include "t3ns/config.hpp"

namespace t3ns {

/// amplitude times the L2-normalized gradient of cos(k.x) (or sin with
/// sine = true), the building block of the rot-free subspace.
Form gradient_mode(std::shared_ptr<const Lattice> lattice, const std::array<int, 3>& k,
                   double amplitude, bool sine = false);

/// Random form with Gaussian coefficients; decay > 0 scales mode k by
/// |k|^(-decay) (the k = 0 block is unscaled). Draws happen in lattice
/// order, so a fixed seed fixes the field.
Form random_form(std::shared_ptr<const Lattice> lattice, int degree,
                 std::mt19937_64& rng, double decay = 0.0);

/// Seeded smooth random initial datum: |k|^(-decay) coefficients projected
/// onto the rot-free subspace.
Form random_rotfree_form(std::shared_ptr<const Lattice> lattice, std::uint64_t seed,
                         double decay, double amplitude);

/// A manufactured exact solution with the forcing that makes it solve the
/// full system under the given viscosity and nonlinearity choice.
struct ManufacturedCase {
  std::string name;
  std::function<Form(double)> u_exact;
  std::function<Form(double)> p_exact;
  ForcingProvider forcing;
};

/// Registered names: "static", "heat" (exact under the zero nonlinearity),
/// "nonlinear". Unknown names are rejected.
ManufacturedCase manufactured_case(const std::string& name,
                                   std::shared_ptr<const Lattice> lattice,
                                   const SolverConfig& config);

Form make_initial(const RunSpec& spec, std::shared_ptr<const Lattice> lattice);
ForcingProvider make_forcing(const RunSpec& spec, std::shared_ptr<const Lattice> lattice);

}  // namespace t3ns
