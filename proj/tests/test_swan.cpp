#include <doctest.h>

#include <algorithm>
#include <vector>

#include "hurwitz/algebra.hpp"
#include "hurwitz/expr.hpp"
#include "hurwitz/swan.hpp"
#include "test_util.hpp"

using namespace hurwitz;
using testutil::Rng;

namespace {

const char* kMainCover =
    "p=5; F=(-2*X + t^10)/((-2)*X^5*(X - t^10)^2*(X - t^5)^5)";
const char* kFirstCover = "p=5; F=(-2*X + t^5)/((-2)*X^5*(X - t^5)^2)";
const char* kWildDiscCover = "p=2; F=1/(X*(X - t^2))";

std::vector<int> conductors(const Cover& c) {
  std::vector<int> out;
  for (const auto& bp : c.branch_locus()) out.push_back(bp.conductor);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("cover construction and generic conductors") {
  SUBCASE("main Z/5 cover: conductors 4, 3, 5 at 0, t^10, t^5") {
    Cover c = Cover::parse(kMainCover);
    CHECK(c.p() == 5);
    REQUIRE(c.branch_locus().size() == 3);
    CHECK(c.ram() == 1);
    const Fq& k = c.field();
    for (const auto& bp : c.branch_locus()) {
      if (bp.z.is_zero()) {
        CHECK(bp.mult == 5);
        CHECK(bp.conductor == 4);  // 1/X^5 sheds a p-th power layer
      } else if (bp.z == Poly::x(k).pow(10)) {
        CHECK(bp.mult == 2);
        CHECK(bp.conductor == 3);
      } else {
        CHECK(bp.z == Poly::x(k).pow(5));
        CHECK(bp.mult == 5);
        CHECK(bp.conductor == 5);
      }
    }
    CHECK(c.conductor_sum() == 12);
  }

  SUBCASE("first Z/5 example: conductors 4 and 3") {
    Cover c = Cover::parse(kFirstCover);
    CHECK(conductors(c) == std::vector<int>{3, 4});
    CHECK(c.conductor_sum() == 7);
  }

  SUBCASE("Z/2 disc cover: two ordinary double points") {
    Cover c = Cover::parse(kWildDiscCover);
    CHECK(conductors(c) == std::vector<int>{2, 2});
  }

  SUBCASE("branch points on the boundary circle are allowed") {
    Cover c = Cover::parse("p=5; F=1/X^5 + 1/(X - 1)^2");
    CHECK(conductors(c) == std::vector<int>{2, 3});
    CHECK(c.conductor_sum() == 5);
  }

  SUBCASE("inadmissible covers are rejected") {
    CHECK_THROWS_AS(Cover::parse("p=5; F=X^2/(X - t)"), std::invalid_argument);
    CHECK_THROWS_AS(Cover::parse("p=5; F=X/(X - t)"), std::invalid_argument);
    CHECK_THROWS_AS(Cover::parse("p=3; F=1/(X^2 - 2)"), std::invalid_argument);
    CHECK_THROWS_AS(Cover::parse("p=3; F=1/(t*X - 1)"), std::invalid_argument);
    CHECK_THROWS_AS(Cover::parse("q=5; F=1/X"), std::invalid_argument);
  }
}

TEST_CASE("make_reduced_at") {
  SUBCASE("Z/2 cover at 0 < s < 1: witness 1/X") {
    Cover c = Cover::parse(kWildDiscCover);
    const Fq& k = c.field();
    ReducedAt r = make_reduced_at(c, Place::origin_disc(k, Rat(1, 2)));
    CHECK(r.fstar == eval_bivariate("(X^2 + t^2*X + t^2)/(X^2*(X - t^2))", k));
    CHECK(r.witness == eval_bivariate("1/X", k));  // -1/X, and -1 = 1
    CHECK(!r.split);
    CHECK(r.nu == Rat(-1, 2));
    CHECK(r.reduction == eval_univariate("1/x", k));
    CHECK(r.steps == 1);
  }

  SUBCASE("etale stage reduces the residue class at s = 0") {
    Cover c = Cover::parse("p=5; F=1/X^5 + 1/(X - 1)^2");
    const Fq& k = c.field();
    ReducedAt r = make_reduced_at(c, Place::boundary(k));
    CHECK(r.fstar == eval_bivariate("1/X + 1/(X - 1)^2", k));
    CHECK(r.witness == eval_bivariate("-1/X", k));
    CHECK(r.nu == Rat(0));
    CHECK(r.reduction == eval_univariate("1/x + 1/(x - 1)^2", k));
  }

  SUBCASE("already-reduced inputs are returned unchanged") {
    Cover c = Cover::parse(kMainCover);
    const Fq& k = c.field();
    for (Rat s : {Rat(0), Rat(5), Rat(10), Rat(7, 2)}) {
      ReducedAt r = make_reduced_at(c, Place::origin_disc(k, s));
      CHECK(r.fstar == c.F());
      CHECK(r.witness.is_zero());
      CHECK(r.steps == 0);
    }
  }

  SUBCASE("an Artin-Schreier image has an unbranched generic fiber and a "
          "trivial class at every place") {
    const Fq& k = Fq::get(3, 1);
    BivRat w = eval_bivariate("t/X + t^2/(X - t)", k);
    Cover c(k, w.artin_schreier_image());
    CHECK(c.branch_locus().empty());
    ReducedAt r = make_reduced_at(c, Place::origin_disc(k, Rat(2)));
    CHECK(r.nu > Rat(0));  // the leading parts cancel against the witness
    CHECK(r.reduction.is_zero());
    DegenerationType d = degeneration_type(c, Place::origin_disc(k, Rat(2)));
    CHECK(!d.radical);
    CHECK(d.reduction.is_zero());
    CHECK(d.jump == 0);
  }
}

TEST_CASE("degeneration types of the main Z/5 cover") {
  Cover c = Cover::parse(kMainCover);
  const Fq& k = c.field();

  SUBCASE("s = 10: radical (17, dx/(x^4 (x-1)^3))") {
    DegenerationType d = degeneration_type(c, Place::origin_disc(k, Rat(10)));
    REQUIRE(d.radical);
    CHECK(d.delta == Rat(17));
    CHECK(d.omega == eval_univariate("1/(x^4*(x - 1)^3)", k));
  }

  SUBCASE("s = 5: radical (11, dx/(x^7 (x-1)^5))") {
    DegenerationType d = degeneration_type(c, Place::origin_disc(k, Rat(5)));
    REQUIRE(d.radical);
    CHECK(d.delta == Rat(11));
    CHECK(d.omega == eval_univariate("1/(x^7*(x - 1)^5)", k));
  }

  SUBCASE("s = 0: etale with reduction 1/x^11 and jump 11") {
    DegenerationType d = degeneration_type(c, Place::boundary(k));
    REQUIRE(!d.radical);
    CHECK(d.reduction == eval_univariate("1/x^11", k));
    CHECK(d.jump == 11);
  }

  SUBCASE("radical differential conductors are exact forms") {
    for (Rat s : {Rat(5), Rat(10), Rat(15, 2)}) {
      DegenerationType d = degeneration_type(c, Place::origin_disc(k, s));
      REQUIRE(d.radical);
      CHECK(is_exact(d.omega).exact);
    }
  }
}

TEST_CASE("boundary swan conductors") {
  Cover c = Cover::parse(kMainCover);
  const Fq& k = c.field();
  Place pl = Place::origin_disc(k, Rat(10));

  CHECK(boundary_swan(c, pl, Direction::infinity()) == -6);
  CHECK(boundary_swan(c, pl, Direction::at(0)) == 3);
  CHECK(boundary_swan(c, pl, Direction::at(1)) == 2);
  CHECK(boundary_swan(c, pl, Direction::at(2)) == -1);  // unramified: -0-1

  SUBCASE("etale direction swan is the pole order of the reduction") {
    CHECK(boundary_swan(c, Place::boundary(k), Direction::at(0)) == 11);
    CHECK(boundary_swan(c, Place::boundary(k), Direction::at(3)) == 0);
  }
}

TEST_CASE("depth profiles") {
  SUBCASE("Z/2 disc cover on [0, 3]: three segments and two kinks") {
    Cover c = Cover::parse(kWildDiscCover);
    const Fq& k = c.field();
    std::vector<ProfileSegment> rows = depth_profile(c, Poly(k), 1, Rat(3));
    REQUIRE(rows.size() == 5);

    CHECK(rows[0].from == Rat(0));
    CHECK(rows[0].to == Rat(1));
    CHECK(rows[0].slope == Rat(1, 2));
    CHECK(rows[0].intercept == Rat(0));
    CHECK(rows[0].omega == eval_univariate("1/x^2", k));

    CHECK(rows[1].from == Rat(1));
    CHECK(rows[1].to == Rat(1));
    CHECK(rows[1].intercept == Rat(1, 2));
    CHECK(rows[1].omega == eval_univariate("(x^2 + 1)/x^4", k));

    CHECK(rows[2].from == Rat(1));
    CHECK(rows[2].to == Rat(2));
    CHECK(rows[2].slope == Rat(3, 2));
    CHECK(rows[2].intercept == Rat(-1));
    CHECK(rows[2].omega == eval_univariate("1/x^4", k));

    CHECK(rows[3].from == Rat(2));
    CHECK(rows[3].to == Rat(2));
    CHECK(rows[3].intercept == Rat(2));
    CHECK(rows[3].omega == eval_univariate("1/(x^2*(x - 1)^2)", k));

    CHECK(rows[4].from == Rat(2));
    CHECK(rows[4].to == Rat(3));
    CHECK(rows[4].slope == Rat(1, 2));
    CHECK(rows[4].intercept == Rat(1));
    CHECK(rows[4].omega == eval_univariate("1/x^2", k));

    for (const auto& row : rows) CHECK(!row.etale);
  }

  SUBCASE("main Z/5 cover on [0, 10]") {
    Cover c = Cover::parse(kMainCover);
    const Fq& k = c.field();
    std::vector<ProfileSegment> rows = depth_profile(c, Poly(k), 1, Rat(10));
    REQUIRE(rows.size() == 3);

    CHECK(rows[0].from == Rat(0));
    CHECK(rows[0].to == Rat(5));
    CHECK(rows[0].slope == Rat(11, 5));
    CHECK(rows[0].intercept == Rat(0));
    CHECK(rows[0].omega == eval_univariate("1/x^12", k));

    CHECK(rows[1].from == Rat(5));
    CHECK(rows[1].to == Rat(5));
    CHECK(rows[1].intercept == Rat(11));
    CHECK(rows[1].omega == eval_univariate("1/(x^7*(x - 1)^5)", k));

    CHECK(rows[2].from == Rat(5));
    CHECK(rows[2].to == Rat(10));
    CHECK(rows[2].slope == Rat(6, 5));
    CHECK(rows[2].intercept == Rat(5));
    CHECK(rows[2].omega == eval_univariate("1/x^7", k));
  }

  SUBCASE("everywhere-etale cover has the zero profile") {
    Cover c = Cover::parse("p=5; F=1/(X - 1)^2");
    const Fq& k = c.field();
    std::vector<ProfileSegment> rows = depth_profile(c, Poly(k), 1, Rat(4));
    for (const auto& row : rows) {
      CHECK(row.etale);
      CHECK(row.slope == Rat(0));
      CHECK(row.intercept == Rat(0));
    }
  }

  SUBCASE("profiles at off-origin centers see the local cluster") {
    Cover c = Cover::parse(kMainCover);
    const Fq& k = c.field();
    // around z = t^5 the only enclosed branch point beyond s > 5 is t^5
    std::vector<ProfileSegment> rows =
        depth_profile(c, Poly::x(k).pow(5), 1, Rat(7));
    REQUIRE(!rows.empty());
    const ProfileSegment& last = rows.back();
    CHECK(last.to == Rat(7));
    CHECK(!last.etale);
    // beyond the cluster radius the slope is (h(t^5) - 1)/p = 4/5
    CHECK(last.slope == Rat(4, 5));
  }
}

TEST_CASE("good reduction verdicts") {
  SUBCASE("main Z/5 cover: good, conductor sum 12 = swan + 1") {
    GoodnessReport rep = good_reduction(Cover::parse(kMainCover));
    CHECK(rep.conductor_sum == 12);
    CHECK(rep.boundary_swan == 11);
    CHECK(rep.delta_boundary == Rat(0));
    CHECK(rep.delta_ybar == Rat(0));
    CHECK(rep.verdict);
  }

  SUBCASE("first Z/5 example: good, special fiber branched with conductor 7") {
    GoodnessReport rep = good_reduction(Cover::parse(kFirstCover));
    CHECK(rep.conductor_sum == 7);
    CHECK(rep.boundary_swan == 6);
    CHECK(rep.verdict);
  }

  SUBCASE("Z/2 disc cover: bad, vanishing cycles appear") {
    GoodnessReport rep = good_reduction(Cover::parse(kWildDiscCover));
    CHECK(rep.conductor_sum == 4);
    CHECK(rep.boundary_swan == 1);
    CHECK(rep.delta_ybar == Rat(1));
    CHECK(!rep.verdict);
  }
}

TEST_CASE("degeneration data is invariant under adding p-th power maps") {
  const Fq& k = Fq::get(3, 1);
  Rng rng(0xfeedbacULL);

  // proper fraction with a guaranteed prime-to-p pole at X = 0 — so every
  // subdisc around 0 meets the branch locus and reduced forms exist there —
  // plus optional poles at tau-polynomial points of positive valuation
  auto random_admissible = [&](int max_poles) {
    BivPoly den = BivPoly::X(k).pow(1 + (int)rng.below(2));
    int poles = (int)rng.below((uint32_t)max_poles + 1);
    for (int i = 0; i < poles; ++i) {
      BivPoly lin = BivPoly::X(k) -
                    BivPoly::constant(k, testutil::random_poly(k, rng, 2) *
                                             Poly::x(k));
      den = den * lin.pow(1 + (int)rng.below(3));
    }
    BivPoly num = testutil::random_bivpoly(k, rng, den.deg_x() - 1, 2, true);
    if (num.coeff(0).is_zero())
      num = num + BivPoly::constant(k, Poly::constant(k, 1));
    return BivRat(std::move(num), std::move(den));
  };

  for (int it = 0; it < 25; ++it) {
    BivRat F = random_admissible(2);
    BivRat a = random_admissible(1);
    Cover c(k, F);
    Cover cp(k, F + a.artin_schreier_image());
    Place pl{Rat((int64_t)rng.below(7), (int64_t)(1 + rng.below(2))), Poly(k), 1};

    DegenerationType d0 = degeneration_type(c, pl);
    DegenerationType d1 = degeneration_type(cp, pl);
    CHECK(d0.radical == d1.radical);
    CHECK(d0.delta == d1.delta);
    CHECK(d0.omega == d1.omega);
    CHECK(d0.jump == d1.jump);
    if (!d0.radical) {
      // the reduced residue classes may differ by a trace-zero constant
      // (an Artin-Schreier image of a constant), and by nothing else
      RatFunc diff = as_reduce(d0.reduction).reduced -
                     as_reduce(d1.reduction).reduced;
      CHECK(diff.is_constant());
      CHECK(k.trace_to_prime(diff.num().coeff(0)) == 0);
    }
  }
}
