#include <doctest.h>

#include "hurwitz/poly.hpp"
#include "test_util.hpp"

using namespace hurwitz;
using testutil::Rng;

TEST_CASE("division with remainder: a == q*b + r, deg r < deg b") {
  for (auto [p, m] : {std::pair<uint32_t, uint32_t>{5, 1}, {3, 2}, {2, 3}}) {
    const Fq& k = Fq::get(p, m);
    Rng rng(41 * p + m);
    for (int i = 0; i < 150; ++i) {
      Poly a = testutil::random_poly(k, rng, 9);
      Poly b = testutil::random_poly(k, rng, 5, true);
      auto [q, r] = a.divrem(b);
      CHECK(q * b + r == a);
      CHECK(r.deg() < b.deg());
    }
  }
}

TEST_CASE("gcd properties") {
  const Fq& k = Fq::get(5, 1);
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    Poly f = testutil::random_poly(k, rng, 4, true);
    Poly g = testutil::random_poly(k, rng, 4, true);
    Poly h = testutil::random_poly(k, rng, 4, true);
    Poly d = Poly::gcd(f * g, f * h);
    CHECK(f.monic().divides(d));
    CHECK(d.divides(f * g));
    CHECK(d.divides(f * h));
  }
}

TEST_CASE("factorization reassembles exactly and is canonically sorted") {
  for (auto [p, m] : {std::pair<uint32_t, uint32_t>{5, 1}, {2, 2}, {7, 1}, {3, 2}}) {
    const Fq& k = Fq::get(p, m);
    Rng rng(100 * p + m);
    for (int i = 0; i < 60; ++i) {
      Poly f = testutil::random_poly(k, rng, 8, true);
      auto fz = f.factor();
      Poly prod = Poly::constant(k, fz.unit);
      for (auto& [g, e] : fz.factors) {
        CHECK(g.lc() == 1);
        prod = prod * g.pow(e);
      }
      CHECK(prod == f);
      for (size_t j = 1; j < fz.factors.size(); ++j)
        CHECK(poly_less(fz.factors[j - 1].first, fz.factors[j].first));
    }
  }
}

TEST_CASE("factorization recovers planted multiplicities, including p-divisible ones") {
  const Fq& k = Fq::get(5, 1);
  // f = x^5 * (x-1)^2 * (x-2)^10 * (x^2+x+1): mixed p-free / p-divisible
  Poly f = Poly::x(k).pow(5) * Poly::linear_root(k, 1).pow(2) *
           Poly::linear_root(k, 2).pow(10) * Poly(k, {1, 1, 1});
  auto fz = f.factor();
  REQUIRE(fz.factors.size() == 4);
  // canonical order: degree then packed coefficients top-down
  CHECK(fz.factors[0].first == Poly::x(k));
  CHECK(fz.factors[0].second == 5);
  CHECK(fz.factors[1].first == Poly::linear_root(k, 2));
  CHECK(fz.factors[1].second == 10);
  CHECK(fz.factors[2].first == Poly::linear_root(k, 1));
  CHECK(fz.factors[2].second == 2);
  CHECK(fz.factors[3].first == Poly(k, {1, 1, 1}));
  CHECK(fz.factors[3].second == 1);
}

TEST_CASE("p-th power detection") {
  const Fq& k = Fq::get(5, 2);
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    Poly f = testutil::random_poly(k, rng, 4, true);
    Poly g = f.pow(5), root;
    REQUIRE(g.pth_power_root(root));
    CHECK(root == f);
    Poly notp = g + Poly::x(k);  // spoil the pattern
    Poly dummy;
    if (g.deg() >= 1) CHECK(!notp.pth_power_root(dummy));
  }
}

TEST_CASE("roots with multiplicity") {
  const Fq& k = Fq::get(7, 1);
  Poly f = Poly::linear_root(k, 3).pow(2) * Poly::linear_root(k, 5) * Poly(k, {1, 0, 1});
  auto rs = f.roots();
  // x^2 + 1 has no roots in F_7 (-1 is not a square mod 7)
  REQUIRE(rs.size() == 2);
  CHECK(rs[0] == std::make_pair((FqEl)3, 2));
  CHECK(rs[1] == std::make_pair((FqEl)5, 1));
}

TEST_CASE("series inverse and division") {
  const Fq& k = Fq::get(5, 1);
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    Poly f = testutil::random_poly(k, rng, 5);
    f = f + Poly::constant(k, f.coeff(0) == 0 ? 1 + rng.below(4) : 0);
    Poly inv = f.series_inverse(8);
    Poly prod = f * inv;
    CHECK(prod.coeff(0) == 1);
    for (int j = 1; j < 8; ++j) CHECK(prod.coeff(j) == 0);
  }
}

TEST_CASE("affine composition agrees with evaluation") {
  const Fq& k = Fq::get(3, 2);
  Rng rng(17);
  for (int i = 0; i < 80; ++i) {
    Poly f = testutil::random_poly(k, rng, 6);
    FqEl a = 1 + rng.below(k.q() - 1), b = rng.below(k.q()), c = rng.below(k.q());
    CHECK(f.compose_affine(a, b).eval(c) == f.eval(k.add(k.mul(a, c), b)));
  }
}

TEST_CASE("derivative rules") {
  const Fq& k = Fq::get(5, 1);
  Rng rng(19);
  for (int i = 0; i < 80; ++i) {
    Poly f = testutil::random_poly(k, rng, 6);
    Poly g = testutil::random_poly(k, rng, 6);
    CHECK((f * g).derivative() == f.derivative() * g + f * g.derivative());
    CHECK((f + g).derivative() == f.derivative() + g.derivative());
    CHECK(f.pow(5).derivative().is_zero());  // d(f^p) = 0 in char p
  }
}
