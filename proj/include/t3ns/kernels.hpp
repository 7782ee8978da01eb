#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace t3ns::kernels {

using cplx = std::complex<double>;

/// Execution policy for the data-parallel kernels. Parallel distributes
/// independent output elements across OpenMP threads; every element keeps
/// the same inner summation order as Serial, so the two policies produce
/// bit-identical results for any thread count.
enum class Exec { Serial, Parallel };

/// Twiddle tables for transforms between a (2K+1)^3 coefficient cube and an
/// n_grid^3 collocation cube with n_grid >= 2K+1. Finer grids than the
/// default 2K+1 are used where integrals of higher-order products must be
/// exact.
struct DftPlan {
  int n_modes = 0;  // 2K+1
  int n_grid = 0;
  std::vector<cplx> fwd;  // n_modes x n_grid, exp(-i k x_j)/n_grid
  std::vector<cplx> inv;  // n_grid x n_modes, exp(+i k x_j)
};

DftPlan make_plan(int truncation, int n_grid);

/// Coefficients (lattice order) -> complex samples on the plan's grid.
void inverse_dft3(const DftPlan& plan, const cplx* coeffs, cplx* grid, Exec exec);

/// Complex samples on the plan's grid -> coefficients (lattice order).
void forward_dft3(const DftPlan& plan, const cplx* grid, cplx* coeffs, Exec exec);

void multiply(const double* a, const double* b, double* out, std::size_t n, Exec exec);
void multiply_add(const double* a, const double* b, double* acc, std::size_t n, Exec exec);

}  // namespace t3ns::kernels
