#pragma once

// deterministic helpers for the property-style suites: a fixed-seed xorshift
// stream and small random algebra objects built from it

#include <cstdint>
#include <set>

#include "hurwitz/poly.hpp"
#include "hurwitz/ratfunc.hpp"
#include "hurwitz/valuation.hpp"

namespace testutil {

struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed * 2654435761u + 0x9e3779b97f4a7c15ULL) {}
  uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  uint32_t below(uint32_t n) { return (uint32_t)(next() % n); }
};

inline hurwitz::Poly random_poly(const hurwitz::Fq& k, Rng& rng, int max_deg,
                                 bool nonzero = false) {
  int d = (int)rng.below((uint32_t)max_deg + 1);
  std::vector<hurwitz::FqEl> c((size_t)d + 1);
  for (auto& ci : c) ci = rng.below(k.q());
  hurwitz::Poly f(k, std::move(c));
  if (nonzero && f.is_zero()) return hurwitz::Poly::constant(k, 1 + rng.below(k.q() - 1));
  return f;
}

inline hurwitz::RatFunc random_ratfunc(const hurwitz::Fq& k, Rng& rng, int max_deg) {
  hurwitz::Poly n = random_poly(k, rng, max_deg);
  hurwitz::Poly d = random_poly(k, rng, max_deg, true);
  return hurwitz::RatFunc(n, d);
}

// rational function whose denominator splits into distinct linear factors
inline hurwitz::RatFunc random_split_ratfunc(const hurwitz::Fq& k, Rng& rng,
                                             int num_deg, int poles,
                                             int max_order) {
  hurwitz::Poly n = random_poly(k, rng, num_deg, true);
  hurwitz::Poly d = hurwitz::Poly::constant(k, 1);
  std::set<hurwitz::FqEl> used;
  for (int i = 0; i < poles && used.size() < k.q(); ++i) {
    hurwitz::FqEl r;
    do {
      r = rng.below(k.q());
    } while (used.count(r));
    used.insert(r);
    int e = 1 + (int)rng.below((uint32_t)max_order);
    d = d * hurwitz::Poly::linear_root(k, r).pow(e);
  }
  return hurwitz::RatFunc(n, d);
}

inline hurwitz::BivPoly random_bivpoly(const hurwitz::Fq& k, Rng& rng,
                                       int max_dx, int max_dt,
                                       bool nonzero = false) {
  int dx = (int)rng.below((uint32_t)max_dx + 1);
  std::vector<hurwitz::Poly> c;
  for (int i = 0; i <= dx; ++i) c.push_back(random_poly(k, rng, max_dt));
  hurwitz::BivPoly f(k, std::move(c));
  if (nonzero && f.is_zero())
    return hurwitz::BivPoly::constant(
        k, hurwitz::Poly::constant(k, 1 + rng.below(k.q() - 1)));
  return f;
}

inline hurwitz::BivRat random_bivrat(const hurwitz::Fq& k, Rng& rng,
                                     int max_dx, int max_dt,
                                     bool nonzero = false) {
  hurwitz::BivPoly n = random_bivpoly(k, rng, max_dx, max_dt, nonzero);
  hurwitz::BivPoly d = random_bivpoly(k, rng, max_dx, max_dt, true);
  return hurwitz::BivRat(std::move(n), std::move(d));
}

// place with a small rational radius and a center of positive valuation
inline hurwitz::Place random_place(const hurwitz::Fq& k, Rng& rng) {
  hurwitz::Rat s((int64_t)rng.below(9), (int64_t)(1 + rng.below(3)));
  hurwitz::Poly z = random_poly(k, rng, 3) * hurwitz::Poly::x(k);
  return hurwitz::Place{s, z, 1 + (int)rng.below(2)};
}

}  // namespace testutil
