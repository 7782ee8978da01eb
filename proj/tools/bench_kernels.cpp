// Compares the serial reference kernels against the OpenMP versions:
// wall time, speedup, and a bitwise equality check of the outputs.
//
//   bench_kernels [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "t3ns/kernels.hpp"

using t3ns::kernels::cplx;
using t3ns::kernels::DftPlan;
using t3ns::kernels::Exec;

namespace {

double seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_best(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = seconds();
    fn();
    best = std::min(best, seconds() - t0);
  }
  return best;
}

bool bitwise_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

void bench_transforms(int K, int reps) {
  const DftPlan plan = t3ns::kernels::make_plan(K, 2 * K + 1);
  const std::size_t n_modes = static_cast<std::size_t>(plan.n_modes) * plan.n_modes * plan.n_modes;
  const std::size_t n_grid = static_cast<std::size_t>(plan.n_grid) * plan.n_grid * plan.n_grid;

  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> coeffs(n_modes);
  for (auto& c : coeffs) c = cplx{gauss(rng), gauss(rng)};

  std::vector<cplx> grid_serial(n_grid), grid_parallel(n_grid);
  std::vector<cplx> back_serial(n_modes), back_parallel(n_modes);

  const double t_inv_s = time_best(reps, [&] {
    t3ns::kernels::inverse_dft3(plan, coeffs.data(), grid_serial.data(), Exec::Serial);
  });
  const double t_inv_p = time_best(reps, [&] {
    t3ns::kernels::inverse_dft3(plan, coeffs.data(), grid_parallel.data(), Exec::Parallel);
  });
  const double t_fwd_s = time_best(reps, [&] {
    t3ns::kernels::forward_dft3(plan, grid_serial.data(), back_serial.data(), Exec::Serial);
  });
  const double t_fwd_p = time_best(reps, [&] {
    t3ns::kernels::forward_dft3(plan, grid_parallel.data(), back_parallel.data(), Exec::Parallel);
  });

  const bool same = bitwise_equal(grid_serial, grid_parallel) &&
                    bitwise_equal(back_serial, back_parallel);

  std::printf("%4d  inverse  %10.3f %10.3f %7.2fx   %s\n", K, 1e3 * t_inv_s,
              1e3 * t_inv_p, t_inv_s / t_inv_p, same ? "bit-identical" : "MISMATCH");
  std::printf("%4d  forward  %10.3f %10.3f %7.2fx   %s\n", K, 1e3 * t_fwd_s,
              1e3 * t_fwd_p, t_fwd_s / t_fwd_p, same ? "bit-identical" : "MISMATCH");
}

void bench_multiply(int K, int reps) {
  const int n1 = 2 * K + 1;
  const std::size_t n = static_cast<std::size_t>(n1) * n1 * n1;
  std::mt19937_64 rng(777);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> a(n), b(n), out_s(n), out_p(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = gauss(rng);
    b[i] = gauss(rng);
  }
  const double t_s = time_best(reps, [&] {
    t3ns::kernels::multiply(a.data(), b.data(), out_s.data(), n, Exec::Serial);
  });
  const double t_p = time_best(reps, [&] {
    t3ns::kernels::multiply(a.data(), b.data(), out_p.data(), n, Exec::Parallel);
  });
  const bool same = std::memcmp(out_s.data(), out_p.data(), n * sizeof(double)) == 0;
  std::printf("%4d  multiply %10.3f %10.3f %7.2fx   %s\n", K, 1e3 * t_s, 1e3 * t_p,
              t_s / t_p, same ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 5;
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel policy degrades to serial\n");
#endif
  std::printf("%4s  %-8s %10s %10s %8s\n", "K", "kernel", "serial ms", "omp ms",
              "speedup");
  for (int K : {8, 12, 16, 21}) {
    bench_transforms(K, reps);
    bench_multiply(K, reps);
  }
  return 0;
}
