#include <doctest.h>

#include "hurwitz/expr.hpp"
#include "hurwitz/valuation.hpp"
#include "test_util.hpp"

using namespace hurwitz;
using testutil::Rng;

namespace {

BivRat bv(const std::string& text, const Fq& k) { return eval_bivariate(text, k); }

}  // namespace

TEST_CASE("gauss valuation basics") {
  const Fq& k = Fq::get(5, 1);

  SUBCASE("nu(X - z) = s") {
    for (const char* zs : {"0", "t^2", "t + 2*t^3"}) {
      BivRat f = bv(std::string("X - (") + zs + ")", k);
      Poly z = bv(zs, k).num().coeff(0);
      for (Rat s : {Rat(0), Rat(1), Rat(3, 2), Rat(7)}) {
        CHECK(gauss_valuation(f, Place{s, z, 1}) == s);
      }
    }
  }

  SUBCASE("constants t^a have valuation a") {
    CHECK(gauss_valuation(bv("t^4", k), Place::boundary(k)) == Rat(4));
    CHECK(gauss_valuation(bv("3*t^2", k), Place::origin_disc(k, Rat(9, 2))) == Rat(2));
    CHECK(gauss_valuation(bv("2/t^3", k), Place::boundary(k)) == Rat(-3));
  }

  SUBCASE("main Z/5 example at (z=0, s=10) has valuation -85") {
    BivRat F = bv("(-2*X + t^10)/((-2)*X^5*(X - t^10)^2*(X - t^5)^5)", k);
    CHECK(gauss_valuation(F, Place::origin_disc(k, Rat(10))) == Rat(-85));
  }
}

TEST_CASE("reduction at a place") {
  const Fq& k = Fq::get(5, 1);

  SUBCASE("[X] at (0, s) is x for integral and ramified s") {
    for (Rat s : {Rat(0), Rat(2), Rat(5, 3)}) {
      PlaceValue pv = reduce_at_place(BivRat::X(k), Place::origin_disc(k, s));
      CHECK(pv.nu == s);
      CHECK(pv.reduction == RatFunc::x(k));
    }
  }

  SUBCASE("main Z/5 example at (0, 10)") {
    BivRat F = bv("(-2*X + t^10)/((-2)*X^5*(X - t^10)^2*(X - t^5)^5)", k);
    PlaceValue pv = reduce_at_place(F, Place::origin_disc(k, Rat(10)));
    CHECK(pv.nu == Rat(-85));
    CHECK(pv.reduction ==
          eval_univariate("(-2*x + 1)/((-2)*x^5*(x - 1)^2*(-1)^5)", k));
  }

  SUBCASE("main Z/5 example at (0, 5) keeps the quintuple point at x=1") {
    BivRat F = bv("(-2*X + t^10)/((-2)*X^5*(X - t^10)^2*(X - t^5)^5)", k);
    PlaceValue pv = reduce_at_place(F, Place::origin_disc(k, Rat(5)));
    CHECK(pv.nu == Rat(-55));
    // at s=5 the factor (X - t^10) reduces to x and (X - t^5) to (x - 1)
    CHECK(pv.reduction == eval_univariate("x/(x^5*x^2*(x-1)^5)", k));
  }

  SUBCASE("Z/2 example at (0, 2)") {
    const Fq& k2 = Fq::get(2, 1);
    PlaceValue pv =
        reduce_at_place(bv("1/(X*(X - t^2))", k2), Place::origin_disc(k2, Rat(2)));
    CHECK(pv.nu == Rat(-4));
    CHECK(pv.reduction == eval_univariate("1/(x*(x-1))", k2));
  }

  SUBCASE("reduction at t = 0 along s = 0 for regular covers") {
    BivRat F = bv("(X + t*X^2)/(X^3 - t - 2)", k);
    PlaceValue pv = reduce_at_place(F, Place::boundary(k));
    CHECK(pv.nu == Rat(0));
    CHECK(pv.reduction == eval_univariate("x/(x^3 - 2)", k));
  }
}

TEST_CASE("valuation and reduction are multiplicative and stable") {
  const Fq& k = Fq::get(3, 1);
  Rng rng(0x5ca1ab1eULL);
  int tried = 0;
  for (int it = 0; it < 120 && tried < 60; ++it) {
    BivRat F = testutil::random_bivrat(k, rng, 3, 3, true);
    BivRat G = testutil::random_bivrat(k, rng, 3, 3, true);
    if (F.is_zero() || G.is_zero()) continue;
    Place pl = testutil::random_place(k, rng);
    ++tried;

    PlaceValue pf = reduce_at_place(F, pl);
    PlaceValue pg = reduce_at_place(G, pl);
    PlaceValue pfg = reduce_at_place(F * G, pl);
    CHECK(pfg.nu == pf.nu + pg.nu);
    CHECK(pfg.reduction == pf.reduction * pg.reduction);

    Rat vsum = gauss_valuation(F + G, pl);
    if (!(F + G).is_zero())
      CHECK(vsum >= Rat::min(pf.nu, pg.nu));

    // promoting the ramification does not change the answer
    BivRat Fw = F.with_ram(F.ram() * 2);
    PlaceValue pw = reduce_at_place(Fw, pl);
    CHECK(pw.nu == pf.nu);
    CHECK(pw.reduction == pf.reduction);
  }
  CHECK(tried == 60);
}

TEST_CASE("tau-polynomial roots in the closed disc") {
  const Fq& k = Fq::get(3, 1);

  SUBCASE("X^2 - t needs tau^2 = t") {
    PuiseuxRoots pr = polynomial_roots_in_disc(bv("X^2 - t", k).num(), 1);
    REQUIRE(pr.complete);
    CHECK(pr.ram == 2);
    REQUIRE(pr.roots.size() == 2);
    Poly tau = Poly::x(k);
    CHECK(((pr.roots[0].first == tau && pr.roots[1].first == -tau) ||
           (pr.roots[0].first == -tau && pr.roots[1].first == tau)));
  }

  SUBCASE("multiplicities and mixed centers") {
    BivPoly D = bv("X^3*(X - t)^2*(X - 1 - t^2)", k).num();
    PuiseuxRoots pr = polynomial_roots_in_disc(D, 1);
    REQUIRE(pr.complete);
    CHECK(pr.ram == 1);
    REQUIRE(pr.roots.size() == 3);
    int seen = 0;
    for (const auto& [z, m] : pr.roots) {
      if (z.is_zero()) {
        CHECK(m == 3);
        ++seen;
      } else if (z == bv("t", k).num().coeff(0)) {
        CHECK(m == 2);
        ++seen;
      } else if (z == bv("1 + t^2", k).num().coeff(0)) {
        CHECK(m == 1);
        ++seen;
      }
    }
    CHECK(seen == 3);
  }

  SUBCASE("roots outside F_q((t))'s polynomial closure are reported missing") {
    // X^2 - 2 has no root in F_3, and X - 1/t leaves the disc
    CHECK(!polynomial_roots_in_disc(bv("X^2 - 2", k).num(), 1).complete);
    CHECK(!polynomial_roots_in_disc(bv("t*X - 1", k).num(), 1).complete);
  }

  SUBCASE("digits with fractional exponents combine with integral ones") {
    // (X^2 - t^3)*(X - t): roots at +-tau^3 (ram 2) and t
    PuiseuxRoots pr = polynomial_roots_in_disc(bv("(X^2 - t^3)*(X - t)", k).num(), 1);
    REQUIRE(pr.complete);
    CHECK(pr.ram == 2);
    CHECK(pr.roots.size() == 3);
    int matched = 0;
    for (const auto& [z, m] : pr.roots) {
      CHECK(m == 1);
      if (z == Poly::x(k).pow(2)) ++matched;           // t at tau^2 = t
      if (z == Poly::x(k).pow(3)) ++matched;           // tau^3
      if (z == -Poly::x(k).pow(3)) ++matched;          // -tau^3
    }
    CHECK(matched == 3);
  }
}
