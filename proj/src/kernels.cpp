#include "t3ns/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace t3ns::kernels {

DftPlan make_plan(int truncation, int n_grid) {
  if (truncation < 1) throw std::invalid_argument("dft plan: truncation must be >= 1");
  const int m = 2 * truncation + 1;
  if (n_grid < m) throw std::invalid_argument("dft plan: grid must resolve every mode");
  DftPlan plan;
  plan.n_modes = m;
  plan.n_grid = n_grid;
  plan.fwd.resize(static_cast<std::size_t>(m) * n_grid);
  plan.inv.resize(static_cast<std::size_t>(n_grid) * m);
  const double step = 2.0 * std::numbers::pi / n_grid;
  for (int j = 0; j < n_grid; ++j) {
    for (int mm = 0; mm < m; ++mm) {
      const double phase = (mm - truncation) * (j * step);
      plan.inv[static_cast<std::size_t>(j) * m + mm] = std::polar(1.0, phase);
      plan.fwd[static_cast<std::size_t>(mm) * n_grid + j] =
          std::polar(1.0 / n_grid, -phase);
    }
  }
  return plan;
}

namespace {

std::ptrdiff_t stride_of(const int dims[3], int axis) {
  if (axis == 0) return static_cast<std::ptrdiff_t>(dims[1]) * dims[2];
  if (axis == 1) return dims[2];
  return 1;
}

// Transform one axis of a row-major cube: length n_in along `axis` becomes
// n_out with out_line[g] = sum_m table[g*n_in + m] * in_line[m]. Lines are
// independent, so the parallel policy splits them across threads while each
// line's summation order stays fixed.
void axis_pass(const cplx* in, cplx* out, const int dims_in[3], int axis,
               const cplx* table, int n_in, int n_out, Exec exec) {
  int dims_out[3] = {dims_in[0], dims_in[1], dims_in[2]};
  dims_out[axis] = n_out;
  const std::ptrdiff_t in_a = stride_of(dims_in, axis);
  const std::ptrdiff_t out_a = stride_of(dims_out, axis);
  const int b = (axis == 0) ? 1 : 0;
  const int c = (axis == 2) ? 1 : 2;
  const std::ptrdiff_t in_b = stride_of(dims_in, b), in_c = stride_of(dims_in, c);
  const std::ptrdiff_t out_b = stride_of(dims_out, b), out_c = stride_of(dims_out, c);
  const int nb = dims_in[b], nc = dims_in[c];
  const std::ptrdiff_t n_lines = static_cast<std::ptrdiff_t>(nb) * nc;

#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (std::ptrdiff_t line = 0; line < n_lines; ++line) {
    const std::ptrdiff_t ib = line / nc;
    const std::ptrdiff_t ic = line % nc;
    const cplx* src = in + ib * in_b + ic * in_c;
    cplx* dst = out + ib * out_b + ic * out_c;
    for (int g = 0; g < n_out; ++g) {
      const cplx* row = table + static_cast<std::size_t>(g) * n_in;
      cplx acc{0.0, 0.0};
      for (int mm = 0; mm < n_in; ++mm) acc += row[mm] * src[mm * in_a];
      dst[g * out_a] = acc;
    }
  }
}

}  // namespace

void inverse_dft3(const DftPlan& plan, const cplx* coeffs, cplx* grid, Exec exec) {
  const int m = plan.n_modes, g = plan.n_grid;
  std::vector<cplx> t1(static_cast<std::size_t>(g) * m * m);
  std::vector<cplx> t2(static_cast<std::size_t>(g) * g * m);
  const int d0[3] = {m, m, m};
  axis_pass(coeffs, t1.data(), d0, 0, plan.inv.data(), m, g, exec);
  const int d1[3] = {g, m, m};
  axis_pass(t1.data(), t2.data(), d1, 1, plan.inv.data(), m, g, exec);
  const int d2[3] = {g, g, m};
  axis_pass(t2.data(), grid, d2, 2, plan.inv.data(), m, g, exec);
}

void forward_dft3(const DftPlan& plan, const cplx* grid, cplx* coeffs, Exec exec) {
  const int m = plan.n_modes, g = plan.n_grid;
  std::vector<cplx> t1(static_cast<std::size_t>(m) * g * g);
  std::vector<cplx> t2(static_cast<std::size_t>(m) * m * g);
  const int d0[3] = {g, g, g};
  axis_pass(grid, t1.data(), d0, 0, plan.fwd.data(), g, m, exec);
  const int d1[3] = {m, g, g};
  axis_pass(t1.data(), t2.data(), d1, 1, plan.fwd.data(), g, m, exec);
  const int d2[3] = {m, m, g};
  axis_pass(t2.data(), coeffs, d2, 2, plan.fwd.data(), g, m, exec);
}

void multiply(const double* a, const double* b, double* out, std::size_t n, Exec exec) {
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (std::ptrdiff_t i = 0; i < sn; ++i) out[i] = a[i] * b[i];
}

void multiply_add(const double* a, const double* b, double* acc, std::size_t n, Exec exec) {
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (std::ptrdiff_t i = 0; i < sn; ++i) acc[i] += a[i] * b[i];
}

}  // namespace t3ns::kernels
