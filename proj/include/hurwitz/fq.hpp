#pragma once

// Finite field contexts F_{p^m}.
//
// Elements are uint32_t values packing base-p digit vectors: the element
// c_0 + c_1*g + ... + c_{m-1}*g^{m-1} (g the canonical generator) is stored
// as the integer c_0 + c_1*p + ... + c_{m-1}*p^{m-1}.  This gives a total
// canonical order on the field (packed value ascending) that every other
// canonical choice in the library reuses.
//
// The modulus of F_{p^m} (m >= 2) is the first monic irreducible polynomial
// of degree m, in ascending packed-coefficient order, whose root g is also a
// generator of the multiplicative group; for m = 1 the tables are built on
// the smallest primitive root mod p.  Multiplication, inversion, powers and
// p-th roots run on log/antilog tables; addition is digitwise mod p.
//
// Fields with q = p^m > 2^22 are rejected (table memory); the spec surface
// only needs small fields.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hurwitz {

using FqEl = uint32_t;

class Fq {
 public:
  // cached registry; references stay valid for the program lifetime
  static const Fq& get(uint32_t p, uint32_t m);

  uint32_t p() const { return p_; }
  uint32_t m() const { return m_; }
  uint32_t q() const { return q_; }

  FqEl zero() const { return 0; }
  FqEl one() const { return 1; }
  // the canonical generator g (for m = 1 this is the primitive root used by
  // the tables, but elements of F_p are just residues)
  FqEl gen() const { return m_ == 1 ? antilog_[1] : p_; }

  FqEl add(FqEl a, FqEl b) const {
    if (m_ == 1) { uint32_t s = a + b; return s >= p_ ? s - p_ : s; }
    FqEl r = 0;
    for (uint32_t i = 0, sh = 1; i < m_; ++i, sh *= p_) {
      uint32_t da = (a / sh) % p_, db = (b / sh) % p_, s = da + db;
      if (s >= p_) s -= p_;
      r += s * sh;
    }
    return r;
  }
  FqEl neg(FqEl a) const {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    FqEl r = 0;
    for (uint32_t i = 0, sh = 1; i < m_; ++i, sh *= p_) {
      uint32_t da = (a / sh) % p_;
      r += (da == 0 ? 0 : p_ - da) * sh;
    }
    return r;
  }
  FqEl sub(FqEl a, FqEl b) const { return add(a, neg(b)); }
  FqEl mul(FqEl a, FqEl b) const {
    if (a == 0 || b == 0) return 0;
    uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return antilog_[s];
  }
  FqEl inv(FqEl a) const;
  FqEl div(FqEl a, FqEl b) const { return mul(a, inv(b)); }
  FqEl pow(FqEl a, long long e) const;
  FqEl frobenius(FqEl a) const { return pow(a, p_); }
  // unique p-th root (Frobenius is bijective)
  FqEl pth_root(FqEl a) const {
    if (a == 0) return 0;
    return antilog_[(uint64_t)log_[a] * pow_p_m1_mod_ % (q_ - 1)];
  }

  FqEl from_int(long long n) const {
    long long r = n % (long long)p_;
    if (r < 0) r += p_;
    return (FqEl)r;
  }
  bool in_prime_field(FqEl a) const { return a < p_; }
  // trace to F_p, returned as a residue 0..p-1
  uint32_t trace_to_prime(FqEl a) const;
  // solve y^p - y = c; empty iff trace != 0
  std::optional<FqEl> artin_schreier_solve(FqEl c) const;

  // canonical embedding into an extension (m | dst.m): g maps to the
  // canonically smallest root of this field's modulus in dst
  static FqEl embed(const Fq& src, FqEl a, const Fq& dst);

  // modulus coefficients c_0..c_{m-1} of g^m = -(c_0 + ... + c_{m-1} g^{m-1});
  // for m = 1 the single entry is the primitive root the tables use
  const std::vector<uint32_t>& modulus_tail() const { return mod_tail_; }

  // "0", "3", "a^2+3*a+4"
  std::string to_string(FqEl a) const;

 private:
  Fq(uint32_t p, uint32_t m);
  uint32_t p_, m_, q_;
  uint64_t pow_p_m1_mod_;  // p^(m-1) mod (q-1), for p-th roots
  std::vector<uint32_t> mod_tail_;
  std::vector<uint32_t> log_, antilog_;
  mutable std::map<std::pair<uint32_t, uint32_t>, FqEl> embed_cache_;
};

}  // namespace hurwitz
