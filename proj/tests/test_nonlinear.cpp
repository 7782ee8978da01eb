#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "t3ns/generators.hpp"

using namespace t3ns;

namespace {

const NonlinearityConfig kDefault{};

Form constant_u(std::shared_ptr<const Lattice> lat, double a, double b, double c) {
  Form u(lat, 2);
  u.component(0).set_mode_pair({0, 0, 0}, cplx{a, 0.0});
  u.component(1).set_mode_pair({0, 0, 0}, cplx{b, 0.0});
  u.component(2).set_mode_pair({0, 0, 0}, cplx{c, 0.0});
  return u;
}

}  // namespace

TEST_CASE("m21 of a constant field vanishes and mismatched lattices are rejected") {
  auto lat = build_lattice(3, true);
  const Form u = constant_u(lat, 1.0, -2.0, 0.5);
  CHECK(l2_norm(m21(apply_d(u), u)) == 0.0);

  auto other = build_lattice(2, true);
  Form w(other, 3);
  CHECK_THROWS_AS(m21(w, u), std::invalid_argument);
}

TEST_CASE("m21 is bilinear in its second argument") {
  std::mt19937_64 rng(41);
  auto lat = build_lattice(3, true);
  const Form a3 = random_form(lat, 3, rng, 1.0);
  const Form u = random_form(lat, 2, rng, 1.0);
  const Form v = random_form(lat, 2, rng, 1.0);
  const Form lhs = m21(a3, u + v);
  const Form rhs = m21(a3, u) + m21(a3, v);
  CHECK(l2_norm(lhs - rhs) <= 1e-12 * (l2_norm(lhs) + 1.0));
}

TEST_CASE("m21 of a single sine mode against the convolution oracle") {
  auto lat = build_lattice(3, true);  // band 2 keeps the doubled mode
  Form u(lat, 2);
  u.component(0) = oracle::sin_mode(lat, {1, 0, 0});
  const Form result = m21(apply_d(u), u);
  // (div u) u = cos(x1) sin(x1) e1 = sin(2 x1)/2 e1
  const ScalarField expected = oracle::sin_mode(lat, {2, 0, 0}, 0.5);
  CHECK(l2_norm(result.component(0) - expected) <= 1e-13);
  CHECK(l2_norm(result.component(1)) <= 1e-15);
  CHECK(l2_norm(result.component(2)) <= 1e-15);
  // independent coefficient-convolution route
  const ScalarField conv = oracle::convolve(apply_d(u).component(0), u.component(0));
  CHECK(std::abs(result.component(0).coeff({2, 0, 0}) - conv.coeff({2, 0, 0})) <= 1e-14);
}

TEST_CASE("m22 on the diagonal vanishes for the half-cross kind") {
  std::mt19937_64 rng(42);
  auto lat = build_lattice(2, true);
  const Form u = random_form(lat, 2, rng, 1.0);
  CHECK(l2_norm(m22(u, u, kDefault)) <= 1e-13 * l2_norm(u));

  NonlinearityConfig zero_kind;
  zero_kind.m22_kind = M22Kind::Zero;
  const Form v = random_form(lat, 2, rng, 1.0);
  CHECK(l2_norm(m22(u, v, zero_kind)) == 0.0);
}

TEST_CASE("pointwise bounds hold on grid samples") {
  std::mt19937_64 rng(43);
  // dealiasing off so the sampled operator values are the exact products
  auto lat = build_lattice(3, false);
  const Form u = random_form(lat, 2, rng, 2.0);
  const Form v = random_form(lat, 2, rng, 2.0);
  const auto audit = audit_pointwise_bounds(u, v, kDefault);
  CHECK(audit.m21_excess <= 1e-10);
  CHECK(audit.m22_excess <= 1e-10);
}

TEST_CASE("n2 of constants vanishes and equals m21 under the default kind") {
  std::mt19937_64 rng(44);
  auto lat = build_lattice(3, true);
  CHECK(l2_norm(n2(constant_u(lat, 2.0, 1.0, -1.0), kDefault)) == 0.0);

  const Form u = random_form(lat, 2, rng, 1.0);
  const Form full = n2(u, kDefault);
  const Form m21_only = m21(apply_d(u), u);
  CHECK(l2_norm(full - m21_only) <= 1e-12 * l2_norm(full));
}

TEST_CASE("n2 is quadratically homogeneous") {
  std::mt19937_64 rng(45);
  auto lat = build_lattice(3, true);
  const Form u = random_form(lat, 2, rng, 1.0);
  const double lambda = 1.7;
  Form scaled = u;
  scaled *= lambda;
  const Form lhs = n2(scaled, kDefault);
  Form rhs = n2(u, kDefault);
  rhs *= lambda * lambda;
  CHECK(l2_norm(lhs - rhs) <= 1e-12 * (l2_norm(rhs) + 1.0));
}

TEST_CASE("n2 output pairs to zero against the harmonic 3-form") {
  std::mt19937_64 rng(46);
  auto lat = build_lattice(3, true);
  const Form u = random_form(lat, 2, rng, 1.0);
  const Form div_n2 = apply_d(n2(u, kDefault));
  // the integral of a divergence vanishes: pairing with the constant 1
  const double pairing = div_n2.component(0).coeff({0, 0, 0}).real() * torus_volume();
  CHECK(std::abs(pairing) <= 1e-11 * (1.0 + l2_norm(u)));
}

TEST_CASE("bilinearize is symmetric, vanishes on zero, and doubles n2") {
  std::mt19937_64 rng(47);
  auto lat = build_lattice(3, true);
  const Form u = random_form(lat, 2, rng, 1.0);
  const Form v = random_form(lat, 2, rng, 1.0);
  Form zero(lat, 2);

  CHECK(l2_norm(bilinearize(u, zero, kDefault)) == 0.0);

  const Form wv = bilinearize(u, v, kDefault);
  const Form vw = bilinearize(v, u, kDefault);
  CHECK(l2_norm(wv - vw) <= 1e-13 * (l2_norm(wv) + 1.0));

  Form twice = n2(u, kDefault);
  twice *= 2.0;
  CHECK(l2_norm(bilinearize(u, u, kDefault) - twice) <= 1e-12 * (l2_norm(twice) + 1.0));
}

TEST_CASE("continuity ratio: guards, scale invariance, ensemble stability") {
  std::mt19937_64 rng(48);
  auto lat = build_lattice(4, true);
  const Form u = random_form(lat, 2, rng, 2.0);
  Form zero(lat, 2);
  CHECK(audit_continuity_bound(u, zero, kDefault) == 0.0);

  const Form w = random_form(lat, 2, rng, 2.0);
  const double r1 = audit_continuity_bound(w, u, kDefault);
  Form w2 = w, u2 = u;
  w2 *= 3.0;
  u2 *= 3.0;
  const double r2 = audit_continuity_bound(w2, u2, kDefault);
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));

  // max ratio over random ensembles is finite and stable across seeds
  auto max_ratio = [&lat](std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    double best = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Form a = random_form(lat, 2, gen, 2.0);
      const Form b = random_form(lat, 2, gen, 2.0);
      best = std::max(best, audit_continuity_bound(a, b, kDefault));
    }
    return best;
  };
  const double m1 = max_ratio(1);
  const double m2 = max_ratio(2);
  CHECK(std::isfinite(m1));
  CHECK(m1 > 0.0);
  CHECK(std::abs(m1 - m2) <= 0.2 * std::max(m1, m2));
}
