#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "hurwitz/algebra.hpp"
#include "hurwitz/forms.hpp"
#include "hurwitz/mpoly.hpp"
#include "hurwitz/poly.hpp"

using namespace hurwitz;

namespace {

// re-derive the pole-order multiset of a witness straight from its form
std::vector<int> pole_orders(const RatFunc& omega) {
  std::vector<int> orders;
  for (const auto& [irr, mult] : omega.den().factor().factors)
    for (int c = 0; c < irr.deg(); ++c) orders.push_back(mult);
  std::sort(orders.begin(), orders.end(), std::greater<int>());
  return orders;
}

void check_witness(const FormType& t, const FormDecision& d) {
  REQUIRE(d.verdict == Verdict::yes);
  REQUIRE(d.witness.has_value());
  CHECK(d.witness->omega.num().is_constant());
  CHECK(pole_orders(d.witness->omega) == t.entries);
  CHECK(is_exact(d.witness->omega).exact);
  if (!d.witness->poles.empty()) {
    REQUIRE(d.witness->poles.size() == t.entries.size());
    std::set<FqEl> distinct(d.witness->poles.begin(), d.witness->poles.end());
    CHECK(distinct.size() == d.witness->poles.size());
  }
}

ExpVec exps(std::vector<uint16_t> e) { return e; }

}  // namespace

TEST_CASE("type validation and normalization") {
  SUBCASE("make_form_type sorts descending and validates") {
    FormType t = make_form_type(5, {3, 12, 7});
    CHECK(t.entries == std::vector<int>{12, 7, 3});
    CHECK_THROWS_AS(make_form_type(4, {3, 2}), std::invalid_argument);
    CHECK_THROWS_AS(make_form_type(5, {6, 2}), std::invalid_argument);
    CHECK_THROWS_AS(make_form_type(5, {2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(make_form_type(5, {}), std::invalid_argument);
  }

  SUBCASE("normalize drops p-divisible entries and reduces the rest") {
    CHECK(normalize_type(make_form_type(5, {7, 12, 3})).entries ==
          std::vector<int>{3, 2, 2});
    CHECK(normalize_type(make_form_type(5, {10})).entries.empty());
    CHECK(normalize_type(make_form_type(7, {9})).entries ==
          std::vector<int>{2});
    CHECK(normalize_type(make_form_type(5, {4, 3, 2})).entries ==
          std::vector<int>{4, 3, 2});
  }

  SUBCASE("format_type") {
    CHECK(format_type({9}) == "{9}");
    CHECK(format_type({3, 2, 2, 2}) == "{3,2,2,2}");
  }
}

TEST_CASE("multivariate polynomial engine") {
  const uint32_t p = 5;

  SUBCASE("degrevlex: degree first, then reversed last-variable comparison") {
    // x0^2 > x0*x1 > x1^2 > x0 in degrevlex on two variables
    CHECK(degrevlex_cmp(exps({2, 0}), exps({1, 1})) > 0);
    CHECK(degrevlex_cmp(exps({1, 1}), exps({0, 2})) > 0);
    CHECK(degrevlex_cmp(exps({0, 2}), exps({1, 0})) > 0);
    CHECK(degrevlex_cmp(exps({1, 0}), exps({1, 0})) == 0);
  }

  SUBCASE("arithmetic round trips") {
    MPoly x = MPoly::variable(p, 2, 0), y = MPoly::variable(p, 2, 1);
    MPoly f = (x + y) * (x - y);
    CHECK(f == x * x - y * y);
    CHECK((f - f).is_zero());
    CHECK(f.scaled(3).scaled(2) == f);  // 6 = 1 mod 5
    CHECK(f.str({"x", "y"}) == "x^2+4*y^2");
  }

  SUBCASE("unit, zero and principal ideals") {
    MPoly x = MPoly::variable(p, 2, 0), y = MPoly::variable(p, 2, 1);
    MPoly one = MPoly::constant(p, 2, 1);
    auto unit = groebner_basis({x, one - x}, 1000);
    REQUIRE(unit.size() == 1);
    CHECK(is_unit_ideal(unit));
    CHECK(groebner_basis({}, 1000).empty());
    CHECK(groebner_basis({MPoly(p, 2)}, 1000).empty());
    auto principal = groebner_basis({(x * y).scaled(3)}, 1000);
    REQUIRE(principal.size() == 1);
    CHECK(principal[0] == x * y);  // monic
    CHECK_FALSE(is_unit_ideal(principal));
  }

  SUBCASE("every S-polynomial of a reduced basis has normal form zero") {
    MPoly x = MPoly::variable(p, 3, 0), y = MPoly::variable(p, 3, 1),
          z = MPoly::variable(p, 3, 2);
    std::vector<MPoly> gens = {x * x - y, x * y - z, y * y * y - z * z + x};
    auto G = groebner_basis(gens, 100000);
    REQUIRE(!G.empty());
    for (size_t i = 0; i < G.size(); ++i)
      for (size_t j = i + 1; j < G.size(); ++j) {
        ExpVec li = G[i].lead().e, lj = G[j].lead().e;
        ExpVec l(li.size());
        for (size_t k = 0; k < l.size(); ++k) l[k] = std::max(li[k], lj[k]);
        ExpVec si(l.size()), sj(l.size());
        for (size_t k = 0; k < l.size(); ++k) {
          si[k] = (uint16_t)(l[k] - li[k]);
          sj[k] = (uint16_t)(l[k] - lj[k]);
        }
        MPoly s = MPoly(p, 3).reduce_by(G[i], si, p - 1).reduce_by(G[j], sj, 1);
        CHECK(normal_form(s, G).is_zero());
      }
    // the generators themselves reduce to zero against the basis
    for (const auto& g : gens) CHECK(normal_form(g, G).is_zero());
  }

  SUBCASE("effort cap throws with the processed-pair count") {
    MPoly x = MPoly::variable(p, 2, 0), y = MPoly::variable(p, 2, 1);
    std::vector<MPoly> gens = {x * x * y + x, x * y * y + y};
    CHECK_THROWS_AS(groebner_basis(gens, 0), EffortCap);
    try {
      groebner_basis(gens, 0);
    } catch (const EffortCap& cap) {
      CHECK(cap.pairs_processed == 1);
      CHECK(cap.basis_size >= 2);
    }
  }
}

TEST_CASE("groebner_unit_test on pinned types") {
  // {3,2,2,2} at p = 5 admits a form, so the ideal stays proper
  CHECK(groebner_unit_test(make_form_type(5, {3, 2, 2, 2})));
  // {2,2,2,6} at p = 7 famously admits none
  CHECK_FALSE(groebner_unit_test(make_form_type(7, {6, 2, 2, 2})));
  // {2,2,2} at p = 5: the sum 6 is 1 mod 5, so the top coefficient is a
  // nonzero constant generator
  CHECK_FALSE(groebner_unit_test(make_form_type(5, {2, 2, 2})));
  // two-pole degenerations run through the same code path
  CHECK(groebner_unit_test(make_form_type(5, {4, 3})));
  CHECK_FALSE(groebner_unit_test(make_form_type(5, {3, 2})));
  // effort cap propagates
  CHECK_THROWS_AS(groebner_unit_test(make_form_type(5, {3, 2, 2, 2}), 0),
                  EffortCap);
}

TEST_CASE("brute_force_witness") {
  SUBCASE("two poles sit at 0 and 1") {
    auto w = brute_force_witness(make_form_type(5, {4, 3}), 2);
    REQUIRE(w.has_value());
    CHECK(w->field->q() == 5);
    CHECK(w->poles == std::vector<FqEl>{0, 1});
    CHECK(is_exact(w->omega).exact);
  }

  SUBCASE("no witness for a type below the bound") {
    CHECK_FALSE(brute_force_witness(make_form_type(5, {3, 2}), 2).has_value());
  }

  SUBCASE("p = 3 triple pole lands on the unique prime-field tuple") {
    auto w = brute_force_witness(make_form_type(3, {2, 2, 2}), 2);
    REQUIRE(w.has_value());
    CHECK(w->field->q() == 3);
    CHECK(w->poles == std::vector<FqEl>{0, 1, 2});
  }

  SUBCASE("p = 7 all-two type fills the prime field") {
    auto w = brute_force_witness(make_form_type(7, {2, 2, 2, 2, 2, 2, 2}), 1);
    REQUIRE(w.has_value());
    CHECK(w->poles == std::vector<FqEl>{0, 1, 2, 3, 4, 5, 6});
  }

  SUBCASE("search is deterministic") {
    auto a = brute_force_witness(make_form_type(5, {3, 3, 3}), 2);
    auto b = brute_force_witness(make_form_type(5, {3, 3, 3}), 2);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->field == b->field);
    CHECK(a->poles == b->poles);
    CHECK(a->omega == b->omega);
  }
}

TEST_CASE("exact_form_exists: decision ladder") {
  SUBCASE("trivial: all orders divisible by p") {
    FormDecision d = exact_form_exists(make_form_type(5, {10, 5}));
    CHECK(d.method == "trivial");
    check_witness(make_form_type(5, {10, 5}), d);
  }

  SUBCASE("single pole, after normalization") {
    FormDecision d = exact_form_exists(make_form_type(5, {7}));
    CHECK(d.method == "single");
    check_witness(make_form_type(5, {7}), d);
    CHECK(d.witness->poles == std::vector<FqEl>{0});
  }

  SUBCASE("the residue bound refuses {3,2} at p = 5") {
    FormDecision d = exact_form_exists(make_form_type(5, {3, 2}));
    CHECK(d.verdict == Verdict::no);
    CHECK(d.method == "bound");
    CHECK(d.note.find("residue") != std::string::npos);
    CHECK_FALSE(d.witness.has_value());
  }

  SUBCASE("two-pole law with witness at (0,1)") {
    FormDecision d = exact_form_exists(make_form_type(5, {4, 3}));
    CHECK(d.method == "pair-law");
    check_witness(make_form_type(5, {4, 3}), d);
    CHECK(d.witness->poles == std::vector<FqEl>{0, 1});
  }

  SUBCASE("unreduced orders get the p-th-power factors back") {
    FormDecision d = exact_form_exists(make_form_type(5, {9, 3}));
    CHECK(d.method == "pair-law");
    check_witness(make_form_type(5, {9, 3}), d);
    const Fq& k = Fq::get(5, 1);
    RatFunc golden(Poly::constant(k, 1),
                   Poly::x(k).pow(9) * Poly::linear_root(k, 1).pow(3));
    CHECK(d.witness->omega == golden);
  }

  SUBCASE("three half-p poles: {3,3,3} at p = 5 needs F_25") {
    FormDecision d = exact_form_exists(make_form_type(5, {3, 3, 3}));
    CHECK(d.method == "family:{(p+1)/2}^3");
    check_witness(make_form_type(5, {3, 3, 3}), d);
    CHECK(d.witness->field->q() == 25);
  }

  SUBCASE("three half-p poles: {4,4,4} at p = 7 stays rational") {
    FormDecision d = exact_form_exists(make_form_type(7, {4, 4, 4}));
    CHECK(d.method == "family:{(p+1)/2}^3");
    check_witness(make_form_type(7, {4, 4, 4}), d);
    CHECK(d.witness->field->q() == 7);
    // a_3 is a root of x^3 + 2x^2 + 2x + 1 away from 0 and 1
    FqEl a = d.witness->poles[2];
    CHECK((a == 2 || a == 4 || a == 6));
  }

  SUBCASE("{p-1, h1, h2} family: {6,3,2} at p = 7") {
    FormDecision d = exact_form_exists(make_form_type(7, {6, 3, 2}));
    CHECK(d.method == "family:{p-1,h1,h2}");
    check_witness(make_form_type(7, {6, 3, 2}), d);
  }

  SUBCASE("roots-of-unity family: {3,3,3,3} at p = 5") {
    FormDecision d = exact_form_exists(make_form_type(5, {3, 3, 3, 3}));
    CHECK(d.method == "family:{v}^(p-v+2)");
    check_witness(make_form_type(5, {3, 3, 3, 3}), d);
    CHECK(d.witness->field->q() == 25);  // x^3 - 1 needs the quadratic ext
  }

  SUBCASE("roots-of-unity family: {2}^7 at p = 7") {
    FormDecision d = exact_form_exists(make_form_type(7, {2, 2, 2, 2, 2, 2, 2}));
    CHECK(d.verdict == Verdict::yes);
    check_witness(make_form_type(7, {2, 2, 2, 2, 2, 2, 2}), d);
  }

  SUBCASE("p = 5 sporadic types") {
    FormDecision d1 = exact_form_exists(make_form_type(5, {3, 2, 2, 2}));
    CHECK(d1.method == "family:p=5-special");
    check_witness(make_form_type(5, {3, 2, 2, 2}), d1);
    FormDecision d2 = exact_form_exists(make_form_type(5, {3, 3, 2, 2}));
    CHECK(d2.method == "family:p=5-special");
    check_witness(make_form_type(5, {3, 3, 2, 2}), d2);
  }

  SUBCASE("groebner rung: {4,4,3} at p = 5 has no form (sum is 1 mod p)") {
    FormDecision d = exact_form_exists(make_form_type(5, {4, 4, 3}));
    CHECK(d.verdict == Verdict::no);
    CHECK(d.method == "groebner");
  }

  SUBCASE("a tripped cap falls back to brute force") {
    FormConfig cfg;
    cfg.pair_cap = 0;
    cfg.m_max = 2;
    FormDecision d = exact_form_exists(make_form_type(7, {5, 3, 2}), cfg);
    CHECK((d.method == "brute-force" || d.method == "capped"));
    CHECK(d.verdict != Verdict::no);
  }
}

TEST_CASE("exact_form_exists: properties on a small corpus") {
  std::vector<FormType> corpus;
  for (uint32_t p : {3u, 5u, 7u}) {
    std::vector<int> pool;
    for (int h = 2; h <= (int)p + 4; ++h)
      if (h % (int)p != 1) pool.push_back(h);
    for (int a : pool) {
      corpus.push_back(make_form_type(p, {a}));
      for (int b : pool) {
        if (b > a) continue;
        corpus.push_back(make_form_type(p, {a, b}));
        for (int c : pool)
          if (c <= b && a + b + c <= 13)
            corpus.push_back(make_form_type(p, {a, b, c}));
      }
    }
  }

  FormConfig cfg;
  cfg.m_max = 2;
  for (const FormType& t : corpus) {
    CAPTURE(t.p);
    CAPTURE(format_type(t.entries));
    FormDecision d = exact_form_exists(t, cfg);
    FormType n0 = normalize_type(t);
    int sum = std::accumulate(n0.entries.begin(), n0.entries.end(), 0);
    int total = std::accumulate(t.entries.begin(), t.entries.end(), 0);

    // the necessary bound and the mod-p obstruction hold on every yes
    if (d.verdict == Verdict::yes) {
      if (n0.entries.size() >= 2)
        CHECK(sum >= (int)t.p + (int)n0.entries.size());
      CHECK(total % (int)t.p != 1);
      if (d.witness) check_witness(t, d);
    }

    // shifting one entry by p never changes the verdict
    FormType shifted = t;
    shifted.entries[0] += (int)t.p;
    CHECK(exact_form_exists(shifted, cfg).verdict == d.verdict);
  }
}

TEST_CASE("groebner and brute force agree on a p = 5 scan") {
  // all normalized types with entries in {2,3,4}, 3 <= n <= 4, sum <= 12
  std::vector<std::vector<int>> types;
  for (int a = 2; a <= 4; ++a)
    for (int b = 2; b <= a; ++b)
      for (int c = 2; c <= b; ++c) {
        if (a + b + c <= 12) types.push_back({a, b, c});
        for (int d = 2; d <= c; ++d)
          if (a + b + c + d <= 12) types.push_back({a, b, c, d});
      }
  for (const auto& e : types) {
    CAPTURE(format_type(e));
    bool ideal_proper = groebner_unit_test(make_form_type(5, e));
    auto witness = brute_force_witness(make_form_type(5, e), 2);
    if (witness.has_value()) CHECK(ideal_proper);  // soundness
    if (!ideal_proper) CHECK_FALSE(witness.has_value());
  }
}

TEST_CASE("multiset_partitions") {
  SUBCASE("distinct elements give Bell-many partitions in pinned order") {
    auto parts = multiset_partitions({4, 3, 2});
    REQUIRE(parts.size() == 5);
    CHECK(parts[0] == std::vector<std::vector<int>>{{4, 3, 2}});
    CHECK(parts[1] == std::vector<std::vector<int>>{{4}, {3, 2}});
    CHECK(parts[2] == std::vector<std::vector<int>>{{4, 2}, {3}});
    CHECK(parts[3] == std::vector<std::vector<int>>{{4, 3}, {2}});
    CHECK(parts[4] == std::vector<std::vector<int>>{{4}, {3}, {2}});
  }

  SUBCASE("repeated elements collapse to integer partitions") {
    CHECK(multiset_partitions({2, 2, 2, 2}).size() == 5);
    CHECK(multiset_partitions({2, 2, 2, 2, 2, 2, 2, 2}).size() == 22);
    CHECK(multiset_partitions({3, 3, 2}).size() == 4);
  }

  SUBCASE("every partition is a partition, and no duplicates") {
    std::vector<int> elems = {5, 3, 3, 2, 2};
    auto parts = multiset_partitions(elems);
    std::sort(elems.begin(), elems.end(), std::greater<int>());
    std::set<std::vector<std::vector<int>>> seen;
    for (const auto& blocks : parts) {
      CHECK(seen.insert(blocks).second);
      std::vector<int> all;
      for (const auto& b : blocks) {
        CHECK(!b.empty());
        CHECK(std::is_sorted(b.begin(), b.end(), std::greater<int>()));
        all.insert(all.end(), b.begin(), b.end());
      }
      std::sort(all.begin(), all.end(), std::greater<int>());
      CHECK(all == elems);
    }
  }
}

TEST_CASE("chain_exists") {
  SUBCASE("the 12 -> {5,4,3} chain splits through {7,5}") {
    auto w = chain_exists(12, make_form_type(5, {5, 4, 3}));
    REQUIRE(w.has_value());
    REQUIRE(w->steps.size() == 2);
    CHECK(w->steps[0].before == std::vector<int>{12});
    CHECK(w->steps[0].part == 12);
    CHECK(w->steps[0].split == std::vector<int>{7, 5});
    CHECK(w->steps[1].before == std::vector<int>{7, 5});
    CHECK(w->steps[1].part == 7);
    CHECK(w->steps[1].split == std::vector<int>{4, 3});
    // the first step's certificate is the dx/(x^7 (x-1)^5) form
    const Fq& k = Fq::get(5, 1);
    REQUIRE(w->steps[0].form.witness.has_value());
    RatFunc golden(Poly::constant(k, 1),
                   Poly::x(k).pow(7) * Poly::linear_root(k, 1).pow(5));
    CHECK(w->steps[0].form.witness->omega == golden);
    for (const auto& s : w->steps) CHECK(s.form.verdict == Verdict::yes);
  }

  SUBCASE("9 -> {3,2,2,2} deforms in one sporadic step") {
    auto w = chain_exists(9, make_form_type(5, {3, 2, 2, 2}));
    REQUIRE(w.has_value());
    REQUIRE(w->steps.size() == 1);
    CHECK(w->steps[0].split == std::vector<int>{3, 2, 2, 2});
    CHECK(w->steps[0].form.method == "family:p=5-special");
  }

  SUBCASE("5 -> {3,2} is blocked by the residue bound") {
    CHECK_FALSE(chain_exists(5, make_form_type(5, {3, 2})).has_value());
  }

  SUBCASE("8 -> {2,2,2,2} fails: every route needs a {2,2}-type split") {
    CHECK_FALSE(chain_exists(8, make_form_type(5, {2, 2, 2, 2})).has_value());
  }

  SUBCASE("singleton target is the empty chain") {
    auto w = chain_exists(7, make_form_type(5, {7}));
    REQUIRE(w.has_value());
    CHECK(w->steps.empty());
  }

  SUBCASE("precondition violations throw") {
    CHECK_THROWS_AS(chain_exists(12, make_form_type(5, {5, 4})),
                    std::invalid_argument);
    CHECK_THROWS_AS(chain_exists(11, make_form_type(5, {4, 4, 3})),
                    std::invalid_argument);
  }

  SUBCASE("chain steps replay to the target partition") {
    for (int h : {9, 12, 14}) {
      auto targets = multiset_partitions(std::vector<int>{h});
      (void)targets;
      for (const auto& entries :
           std::vector<std::vector<int>>{{h}, {(h + 1) / 2, h / 2}}) {
        int sum = std::accumulate(entries.begin(), entries.end(), 0);
        if (sum != h) continue;
        bool valid = true;
        for (int e : entries)
          if (e < 2 || e % 5 == 1) valid = false;
        if (!valid || h % 5 == 1) continue;
        auto w = chain_exists(h, make_form_type(5, entries));
        if (!w) continue;
        std::vector<int> cur{h};
        for (const auto& s : w->steps) {
          CHECK(s.before == cur);
          auto it = std::find(cur.begin(), cur.end(), s.part);
          REQUIRE(it != cur.end());
          cur.erase(it);
          cur.insert(cur.end(), s.split.begin(), s.split.end());
          std::sort(cur.begin(), cur.end(), std::greater<int>());
          CHECK(s.form.verdict == Verdict::yes);
          int split_sum =
              std::accumulate(s.split.begin(), s.split.end(), 0);
          CHECK(split_sum == s.part);
        }
        std::vector<int> want = entries;
        std::sort(want.begin(), want.end(), std::greater<int>());
        CHECK(cur == want);
      }
    }
  }
}
