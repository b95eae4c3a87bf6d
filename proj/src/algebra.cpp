#include "hurwitz/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hurwitz {
namespace {

// extended Euclid: returns (g, u) with g = gcd(a, b) monic and u*a == g mod b
std::pair<Poly, Poly> half_ext_gcd(Poly a, Poly b) {
  const Fq& k = a.field();
  Poly u0 = Poly::constant(k, 1), u1(k);
  while (!b.is_zero()) {
    auto [q, r] = a.divrem(b);
    Poly u2 = u0 - q * u1;
    a = std::move(b);
    b = std::move(r);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (a.is_zero()) throw std::domain_error("half_ext_gcd: gcd of zeros");
  FqEl li = k.inv(a.lc());
  return {a.scaled(li), u0.scaled(li)};
}

// inverse of a modulo q, for a coprime to q
Poly inv_mod(const Poly& a, const Poly& q) {
  auto [g, u] = half_ext_gcd(a % q, q);
  if (g.deg() != 0) throw std::domain_error("inv_mod: not invertible");
  return u % q;
}

// p-th root in the field F_q[x]/(irr): Frobenius on that field is
// z -> z^p, so the root is z^(p^(m*deg(irr) - 1)), computed by iterating
// the p-th power map
Poly pth_root_mod(const Poly& a, const Poly& irr) {
  const Fq& k = a.field();
  uint32_t steps = k.m() * (uint32_t)irr.deg();
  Poly b = a % irr;
  for (uint32_t i = 0; i + 1 < steps; ++i) {
    Poly c = Poly::constant(k, 1);
    Poly base = b;
    for (uint32_t e = 0; e < k.p(); ++e) c = (c * base) % irr;  // b^p, p is tiny
    b = std::move(c);
  }
  return b;
}

}  // namespace

RatFunc artin_schreier_image(const RatFunc& w) {
  return w.pow(w.field().p()) - w;
}

ReduceResult as_reduce(const RatFunc& f) {
  const Fq& k = f.field();
  uint32_t p = k.p();
  RatFunc cur = f;
  RatFunc wit = RatFunc::zero(k);

  // polynomial part: kill every term of positive degree divisible by p,
  // highest first (each correction only spills into lower degrees)
  {
    auto [poly, proper] = cur.split_polynomial_part();
    for (;;) {
      int j = 0;
      for (int i = (int)p; i <= poly.deg(); i += (int)p)
        if (poly.coeff(i) != 0) j = i;
      if (j == 0) break;
      std::vector<FqEl> a((size_t)(j / (int)p) + 1, 0);
      a.back() = k.pth_root(poly.coeff(j));
      RatFunc corr{Poly(k, std::move(a))};
      cur = cur - artin_schreier_image(corr);
      wit = wit + corr;
      poly = cur.split_polynomial_part().first;
    }
  }

  // finite places: kill every partial-fraction term whose order is divisible
  // by p, one irreducible at a time.  Corrections at irr leave the other
  // places alone, so a single pass over the factors suffices.
  auto fz = cur.den().factor();
  for (auto& [irr, mult0] : fz.factors) {
    (void)mult0;
    if (cur.is_zero()) break;
    int e = -std::min(0, cur.ord_at_factor(irr));
    int guard = e + 4;
    while (e >= (int)p) {
      if (--guard < 0) throw std::logic_error("as_reduce: divergence at a finite place");
      // irr-adic digits of the local expansion: with cur = N/(irr^e * D1),
      // A = N * D1^{-1} mod irr^e carries the term of order e - i in digit i
      Poly ie = irr.pow(e);
      Poly d1 = cur.den();
      for (int i = 0; i < e; ++i) d1 = d1 / irr;
      Poly A = (cur.num() % ie) * inv_mod(d1 % ie, ie) % ie;
      int j = 0;
      Poly lead(k);
      for (int i = 0; i < e && !A.is_zero(); ++i) {
        auto [quot, digit] = A.divrem(irr);
        if ((e - i) % (int)p == 0 && !digit.is_zero()) {
          j = e - i;
          lead = digit;
          break;
        }
        A = quot;
      }
      if (j == 0) break;  // all remaining orders at irr are prime to p
      Poly b = pth_root_mod(lead, irr);
      RatFunc corr(b, irr.pow(j / (int)p));
      cur = cur - artin_schreier_image(corr);
      wit = wit + corr;
      e = -std::min(0, cur.is_zero() ? 0 : cur.ord_at_factor(irr));
    }
  }

  // constant remainder: absorbable iff its trace to F_p vanishes
  if (!cur.is_zero() && cur.is_constant()) {
    FqEl c = cur.num().coeff(0);
    if (auto a = k.artin_schreier_solve(c)) {
      RatFunc corr = RatFunc::constant(k, *a);
      cur = cur - artin_schreier_image(corr);
      wit = wit + corr;
    }
  }

  ReduceResult res{cur, wit, cur.is_zero()};
  if (f != res.reduced + artin_schreier_image(res.witness))
    throw std::logic_error("as_reduce: witness identity violated");
  return res;
}

std::vector<int> branching_datum(const RatFunc& f) {
  auto red = as_reduce(f).reduced;
  std::vector<int> datum;
  if (red.is_zero() || red.is_constant()) return datum;
  for (auto& [irr, e] : red.den().factor().factors)
    for (int i = 0; i < irr.deg(); ++i) datum.push_back(e + 1);
  auto [poly, proper] = red.split_polynomial_part();
  if (poly.deg() >= 1) datum.push_back(poly.deg() + 1);
  std::sort(datum.rbegin(), datum.rend());
  return datum;
}

long genus_from_datum(uint32_t p, const std::vector<int>& datum) {
  long total = 0;
  for (int h : datum) {
    if (h < 2 || h % (long)p == 1)
      throw std::invalid_argument(
          "genus: conductor " + std::to_string(h) + " must be >= 2 and != 1 mod p");
    total += h;
  }
  if (datum.empty()) return 0;
  return (total - 2) * ((long)p - 1) / 2;
}

long genus(const RatFunc& f) {
  return genus_from_datum(f.field().p(), branching_datum(f));
}

ExactResult is_exact(const RatFunc& f) {
  const Fq& k = f.field();
  uint32_t p = k.p();
  if (f.is_zero()) return {true, RatFunc::zero(k)};
  Poly m = f.num() * f.den().pow((long long)p - 1);
  for (int j = (int)p - 1; j <= m.deg(); j += (int)p)
    if (m.coeff(j) != 0) return {false, RatFunc::zero(k)};
  std::vector<FqEl> pc((size_t)m.deg() + 2, 0);
  for (int j = 0; j <= m.deg(); ++j) {
    if (m.coeff(j) == 0) continue;
    pc[(size_t)j + 1] = k.div(m.coeff(j), k.from_int(j + 1));
  }
  RatFunc h(Poly(k, std::move(pc)), f.den().pow(p));
  if (h.derivative() != f) throw std::logic_error("is_exact: antiderivative check failed");
  return {true, h};
}

FqEl residue_at(const RatFunc& f, FqEl a) { return f.residue_at(a); }
FqEl residue_at_infinity(const RatFunc& f) { return f.residue_at_infinity(); }

RatFunc fpx_normalize(const RatFunc& f) {
  if (f.is_zero()) return f;
  const Fq& k = f.field();
  FqEl lead = f.num().lc();
  FqEl best = lead, best_c = 1;
  for (uint32_t c = 2; c < k.p(); ++c) {
    FqEl cand = k.mul(k.from_int(c), lead);
    if (cand < best) {
      best = cand;
      best_c = k.from_int(c);
    }
  }
  return best_c == 1 ? f : f.scaled(best_c);
}

}  // namespace hurwitz
