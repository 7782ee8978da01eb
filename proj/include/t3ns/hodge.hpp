#pragma once

#include "t3ns/form.hpp"

namespace t3ns {

/// Orthogonal projection onto the harmonic space: the k = 0 part.
Form project_harmonic(const Form& u);

/// Parametrix of the Hodge Laplacian: divides each k != 0 coefficient by
/// |k|^2 and zeroes the harmonic part, so that both compositions with the
/// Laplacian equal I minus the harmonic projection.
Form parametrix(const Form& u);

/// Helmholtz-type projection at degree 2, assembled as d2* d2 parametrix
/// plus the harmonic projection. Its image consists of rot-free fields.
Form helmholtz_project(const Form& w);

/// Solves rot p = F for the unique divergence-free, mean-zero 1-form p,
/// mode by mode: p(k) = i k x F(k) / |k|^2. Requires the Helmholtz
/// projection of F to be negligible: |P2 F| <= rel_tol * |F| in L2, else
/// throws PreconditionError reporting the offending norm.
Form solve_pressure(const Form& F, double rel_tol = 1e-8);

/// The harmonic space of one degree: the constant forms, of dimension
/// (1,3,3,1) for degrees 0..3 (the Betti numbers of the 3-torus).
struct HarmonicSpace {
  int degree = 0;
  int dimension = 0;
  std::vector<Form> basis;
};

HarmonicSpace harmonic_space(std::shared_ptr<const Lattice> lattice, int degree);

}  // namespace t3ns
