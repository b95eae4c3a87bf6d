#pragma once

// Rational functions over F_q in one variable, kept in lowest terms with a
// monic denominator.  Also carries the local expansion helpers (orders and
// residues at finite points and at infinity) that the Artin-Schreier
// calculus is built on.

#include <utility>

#include "hurwitz/poly.hpp"

namespace hurwitz {

class RatFunc {
 public:
  RatFunc() {}
  explicit RatFunc(Poly num) : num_(std::move(num)) {
    den_ = Poly::constant(num_.field(), 1);
  }
  RatFunc(Poly num, Poly den);
  static RatFunc zero(const Fq& k) { return RatFunc(Poly(k)); }
  static RatFunc constant(const Fq& k, FqEl c) { return RatFunc(Poly::constant(k, c)); }
  static RatFunc x(const Fq& k) { return RatFunc(Poly::x(k)); }

  const Fq& field() const { return num_.field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc pow(long long e) const;  // negative exponents allowed
  RatFunc scaled(FqEl c) const { return RatFunc(num_.scaled(c), den_); }
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc derivative() const;
  // f(a*x + b)
  RatFunc compose_affine(FqEl a, FqEl b) const;

  // order of vanishing at x = a (negative at a pole)
  int ord_at(FqEl a) const;
  // order at the infinite place: deg(den) - deg(num)
  int ord_at_infinity() const;
  // order along a monic irreducible
  int ord_at_factor(const Poly& irr) const;

  // residue of f dx at x = a resp. at infinity (exact)
  FqEl residue_at(FqEl a) const;
  FqEl residue_at_infinity() const;

  // polynomial part and proper part: f = poly + proper with deg num(proper) < deg den
  std::pair<Poly, RatFunc> split_polynomial_part() const;

  // true iff f = g^p for rational g; fills out with the p-th root
  bool pth_power_root(RatFunc& out) const;

 private:
  Poly num_, den_;
  void normalize();
};

}  // namespace hurwitz
