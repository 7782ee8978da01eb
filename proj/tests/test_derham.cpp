#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "t3ns/generators.hpp"

using namespace t3ns;

namespace {

double rel(double err, double scale) { return scale == 0.0 ? err : err / scale; }

}  // namespace

TEST_CASE("exterior derivative of a constant vanishes and degree 3 is rejected") {
  auto lat = build_lattice(2, true);
  Form c0(lat, 0);
  c0.component(0).set_mode_pair({0, 0, 0}, cplx{3.0, 0.0});
  CHECK(l2_norm(apply_d(c0)) == 0.0);
  Form c3(lat, 3);
  CHECK_THROWS_AS(apply_d(c3), std::invalid_argument);
  Form c0b(lat, 0);
  CHECK_THROWS_AS(apply_d_star(c0b), std::invalid_argument);
}

TEST_CASE("complex property: d of d vanishes") {
  std::mt19937_64 rng(21);
  auto lat = build_lattice(3, true);
  for (int q : {0, 1}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Form u = random_form(lat, q, rng, 1.0);
      CHECK(rel(l2_norm(apply_d(apply_d(u))), l2_norm(u)) <= 1e-12);
    }
  }
}

TEST_CASE("divergence of a single sine mode") {
  auto lat = build_lattice(2, true);
  Form u(lat, 2);
  u.component(0) = oracle::sin_mode(lat, {1, 0, 0});
  const Form div = apply_d(u);
  // d/dx1 sin(x1) = cos(x1)
  const ScalarField expected = oracle::cos_mode(lat, {1, 0, 0});
  CHECK(l2_norm(div.component(0) - expected) <= 1e-13);
}

TEST_CASE("adjoint of the divergence is minus the gradient") {
  auto lat = build_lattice(2, true);
  Form c3(lat, 3);
  c3.component(0).set_mode_pair({0, 0, 0}, cplx{4.0, 0.0});
  CHECK(l2_norm(apply_d_star(c3)) == 0.0);

  Form w(lat, 3);
  w.component(0) = oracle::cos_mode(lat, {1, 0, 0});
  const Form minus_grad = apply_d_star(w);
  Form expected(lat, 2);
  expected.component(0) = oracle::sin_mode(lat, {1, 0, 0});
  CHECK(l2_norm(minus_grad - expected) <= 1e-13);
}

TEST_CASE("adjointness holds over random pairs for every degree") {
  std::mt19937_64 rng(22);
  auto lat = build_lattice(3, true);
  for (int q = 0; q < 3; ++q) {
    for (int trial = 0; trial < 200; ++trial) {
      const Form u = random_form(lat, q, rng, 1.0);
      const Form v = random_form(lat, q + 1, rng, 1.0);
      const double lhs = l2_inner(apply_d(u), v);
      const double rhs = l2_inner(u, apply_d_star(v));
      CHECK(std::abs(lhs - rhs) <= 1e-10 * l2_norm(u) * l2_norm(v));
    }
  }
}

TEST_CASE("laplacian eigenstructure") {
  auto lat = build_lattice(3, true);
  // constant forms are harmonic
  for (int q = 0; q < 4; ++q) {
    Form c(lat, q);
    for (int a = 0; a < c.components(); ++a)
      c.component(a).set_mode_pair({0, 0, 0}, cplx{1.0 + a, 0.0});
    CHECK(l2_norm(laplacian(c)) == 0.0);
  }
  // |k|^2 = 1 eigenvalue on a single mode, any degree
  std::mt19937_64 rng(23);
  for (int q = 0; q < 4; ++q) {
    Form u(lat, q);
    for (int a = 0; a < u.components(); ++a)
      u.component(a).set_mode_pair({1, 0, 0}, cplx{0.3 + a, 0.1});
    const Form lap = laplacian(u);
    CHECK(l2_norm(lap - u) <= 1e-13 * l2_norm(u));
  }
}

TEST_CASE("composition route equals the multiplier route") {
  std::mt19937_64 rng(24);
  auto lat = build_lattice(3, true);
  for (int q = 0; q < 4; ++q) {
    const Form u = random_form(lat, q, rng, 1.0);
    const Form by_composition = laplacian(u);
    const Form by_multiplier = apply_symbol(u, [](int ksq) { return static_cast<double>(ksq); });
    CHECK(l2_norm(by_composition - by_multiplier) <= 1e-12 * l2_norm(u));
  }
}

TEST_CASE("vector-calculus identity at degree 2") {
  std::mt19937_64 rng(25);
  auto lat = build_lattice(3, true);
  const Form u = random_form(lat, 2, rng, 1.0);
  // -grad div u + rot rot u, assembled from the realized operators
  const Form minus_grad_div = apply_d_star(apply_d(u));
  const Form rot_rot = apply_d(apply_d_star(u));
  const Form componentwise = apply_symbol(u, [](int ksq) { return static_cast<double>(ksq); });
  CHECK(l2_norm((minus_grad_div + rot_rot) - componentwise) <= 1e-12 * l2_norm(u));
}

TEST_CASE("fractional gradient structure") {
  auto lat = build_lattice(3, true);
  std::mt19937_64 rng(26);

  // m = 0 is the identity
  const Form u2 = random_form(lat, 2, rng, 1.0);
  const auto g0 = frac_gradient(u2, 0);
  REQUIRE(g0.even_part.has_value());
  CHECK(l2_norm(*g0.even_part - u2) == 0.0);

  // m = 2 on a degree-3 cosine: eigenvalue 1
  Form w(lat, 3);
  w.component(0) = oracle::cos_mode(lat, {1, 0, 0});
  const auto g2 = frac_gradient(w, 2);
  REQUIRE(g2.even_part.has_value());
  CHECK(l2_norm(*g2.even_part - w) <= 1e-13);

  // odd orders drop the absent boundary summand
  const auto g1_top = frac_gradient(w, 1);
  CHECK(!g1_top.up.has_value());
  REQUIRE(g1_top.down.has_value());
  Form s(lat, 0);
  s.component(0) = oracle::cos_mode(lat, {1, 1, 0});
  const auto g1_bottom = frac_gradient(s, 1);
  CHECK(!g1_bottom.down.has_value());
  REQUIRE(g1_bottom.up.has_value());
}

TEST_CASE("fractional gradient norm identity for m <= 4") {
  std::mt19937_64 rng(27);
  auto lat = build_lattice(3, true);
  for (int q = 0; q < 4; ++q) {
    const Form u = random_form(lat, q, rng, 1.0);
    for (int m = 0; m <= 4; ++m) {
      const auto grad = frac_gradient(u, m);
      double op_route = 0.0;
      if (grad.even_part) op_route += l2_inner(*grad.even_part, *grad.even_part);
      if (grad.up) op_route += l2_inner(*grad.up, *grad.up);
      if (grad.down) op_route += l2_inner(*grad.down, *grad.down);
      const double multiplier_route = frac_gradient_norm_sq(u, m);
      CHECK(std::abs(op_route - multiplier_route) <=
            1e-11 * std::max(multiplier_route, 1e-30));
    }
  }
}

TEST_CASE("gradient-energy identity for div of a field") {
  // |grad^1 g|^2 equals the |k|^2-weighted coefficient energy
  std::mt19937_64 rng(28);
  auto lat = build_lattice(4, true);
  const ScalarField g = random_form(lat, 3, rng, 1.0).component(0);
  double weighted = 0.0;
  for (std::size_t i = 0; i < lat->size(); ++i)
    weighted += lat->mode(i).ksq * std::norm(g.coeff(i));
  weighted *= torus_volume();
  CHECK(frac_gradient_norm_sq(g, 1) == doctest::Approx(weighted).epsilon(1e-12));
}
