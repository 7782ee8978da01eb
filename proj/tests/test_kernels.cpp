#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "t3ns/kernels.hpp"

using t3ns::kernels::cplx;
using t3ns::kernels::Exec;

// The parallel kernels must reproduce the serial reference bit for bit:
// each output element is owned by one thread and keeps the serial
// summation order.

TEST_CASE("serial and parallel transforms are bit-identical") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int K : {2, 5, 8}) {
    const auto plan = t3ns::kernels::make_plan(K, 2 * K + 1);
    const std::size_t n =
        static_cast<std::size_t>(plan.n_modes) * plan.n_modes * plan.n_modes;
    std::vector<cplx> coeffs(n);
    for (auto& c : coeffs) c = cplx{gauss(rng), gauss(rng)};

    std::vector<cplx> grid_s(n), grid_p(n), back_s(n), back_p(n);
    t3ns::kernels::inverse_dft3(plan, coeffs.data(), grid_s.data(), Exec::Serial);
    t3ns::kernels::inverse_dft3(plan, coeffs.data(), grid_p.data(), Exec::Parallel);
    t3ns::kernels::forward_dft3(plan, grid_s.data(), back_s.data(), Exec::Serial);
    t3ns::kernels::forward_dft3(plan, grid_p.data(), back_p.data(), Exec::Parallel);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(grid_s[i] == grid_p[i]);
      CHECK(back_s[i] == back_p[i]);
    }
  }
}

TEST_CASE("serial and parallel grid products are bit-identical") {
  std::mt19937_64 rng(100);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t n = 17 * 17 * 17;
  std::vector<double> a(n), b(n), out_s(n), out_p(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = gauss(rng);
    b[i] = gauss(rng);
  }
  t3ns::kernels::multiply(a.data(), b.data(), out_s.data(), n, Exec::Serial);
  t3ns::kernels::multiply(a.data(), b.data(), out_p.data(), n, Exec::Parallel);
  for (std::size_t i = 0; i < n; ++i) CHECK(out_s[i] == out_p[i]);

  std::vector<double> acc_s(n, 1.0), acc_p(n, 1.0);
  t3ns::kernels::multiply_add(a.data(), b.data(), acc_s.data(), n, Exec::Serial);
  t3ns::kernels::multiply_add(a.data(), b.data(), acc_p.data(), n, Exec::Parallel);
  for (std::size_t i = 0; i < n; ++i) CHECK(acc_s[i] == acc_p[i]);
}

TEST_CASE("transform pair is the identity on coefficients") {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto plan = t3ns::kernels::make_plan(4, 9);
  const std::size_t n = 9 * 9 * 9;
  std::vector<cplx> coeffs(n);
  for (auto& c : coeffs) c = cplx{gauss(rng), gauss(rng)};
  std::vector<cplx> grid(n), back(n);
  t3ns::kernels::inverse_dft3(plan, coeffs.data(), grid.data(), Exec::Parallel);
  t3ns::kernels::forward_dft3(plan, grid.data(), back.data(), Exec::Parallel);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(back[i] - coeffs[i]) <= 1e-12);
}

TEST_CASE("plan construction validates its arguments") {
  CHECK_THROWS_AS(t3ns::kernels::make_plan(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(t3ns::kernels::make_plan(3, 5), std::invalid_argument);
}
