#pragma once

// Bivariate layer: polynomials and rational functions in the coordinate X
// over the base K = F_q(tau), where tau^ram = t is a root of the deformation
// parameter.  A BivPoly stores coefficients of powers of X as polynomials in
// tau; a BivRat is a normalized quotient (bivariate gcd cancelled, leading
// coefficient made tau-monic).  Mixed-ramification operands are promoted to
// the lcm ramification by tau -> tau^e substitution.

#include "hurwitz/expr.hpp"
#include "hurwitz/ratfunc.hpp"

namespace hurwitz {

class BivPoly {
 public:
  BivPoly() {}
  explicit BivPoly(const Fq& k) : k_(&k) {}
  BivPoly(const Fq& k, std::vector<Poly> coeffs) : k_(&k), c_(std::move(coeffs)) {
    trim();
  }
  static BivPoly X(const Fq& k) {
    return BivPoly(k, {Poly(k), Poly::constant(k, 1)});
  }
  static BivPoly constant(const Fq& k, Poly tau_poly) {
    return BivPoly(k, {std::move(tau_poly)});
  }
  // lift of a univariate polynomial in X
  static BivPoly lift_x(const Poly& f);

  const Fq& field() const;
  bool is_zero() const { return c_.empty(); }
  int deg_x() const { return (int)c_.size() - 1; }
  const Poly& coeff(int i) const;
  const std::vector<Poly>& coeffs() const { return c_; }
  // max tau-degree over the coefficients (-1 when zero)
  int deg_tau() const;
  // min over nonzero coefficients of their tau-order (-1 when zero)
  int ord_tau() const;

  BivPoly operator+(const BivPoly& o) const;
  BivPoly operator-(const BivPoly& o) const;
  BivPoly operator-() const;
  BivPoly operator*(const BivPoly& o) const;
  BivPoly scaled(const Poly& tau_poly) const;
  bool operator==(const BivPoly& o) const { return c_ == o.c_; }
  bool operator!=(const BivPoly& o) const { return c_ != o.c_; }
  BivPoly pow(long long e) const;

  // X -> X + z(tau)
  BivPoly subst_x_plus(const Poly& z) const;
  // X -> u(tau) * X
  BivPoly scale_x(const Poly& u) const;
  // tau -> tau^e (ramification promotion)
  BivPoly inflate_tau(int e) const;
  // divide every coefficient by tau^e (throws unless exact)
  BivPoly shift_tau_down(int e) const;
  // coefficient-wise evaluation tau = 0, giving a univariate polynomial in X
  Poly at_tau_zero() const;
  // evaluate X = z(tau)
  Poly eval_x(const Poly& z) const;
  // exact division by (X - z); throws if z is not a root
  BivPoly synthetic_quotient(const Poly& z) const;
  BivPoly derivative_x() const;

  // gcd of all coefficients as tau-polynomials (monic); zero poly for zero
  Poly content_tau() const;

  static BivPoly gcd(const BivPoly& a, const BivPoly& b);
  // exact division (throws if not divisible)
  static BivPoly div_exact(const BivPoly& a, const BivPoly& b);

 private:
  const Fq* k_ = nullptr;
  std::vector<Poly> c_;
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
};

class BivRat {
 public:
  BivRat() {}
  explicit BivRat(BivPoly num);
  BivRat(BivPoly num, BivPoly den, int ram = 1);
  static BivRat zero(const Fq& k) { return BivRat(BivPoly(k)); }
  static BivRat constant(const Fq& k, FqEl c) {
    return BivRat(BivPoly::constant(k, Poly::constant(k, c)));
  }
  static BivRat X(const Fq& k) { return BivRat(BivPoly::X(k)); }
  // tau^e as an element (e >= 0)
  static BivRat tau_power(const Fq& k, int e, int ram);

  const Fq& field() const { return num_.field(); }
  const BivPoly& num() const { return num_; }
  const BivPoly& den() const { return den_; }
  int ram() const { return ram_; }
  bool is_zero() const { return num_.is_zero(); }

  // same value, expressed with ramification new_ram (a multiple of ram)
  BivRat with_ram(int new_ram) const;

  BivRat operator+(const BivRat& o) const;
  BivRat operator-(const BivRat& o) const;
  BivRat operator-() const;
  BivRat operator*(const BivRat& o) const;
  BivRat operator/(const BivRat& o) const;
  BivRat pow(long long e) const;
  bool operator==(const BivRat& o) const;
  bool operator!=(const BivRat& o) const { return !(*this == o); }

  // w^p - w
  BivRat artin_schreier_image() const;

 private:
  BivPoly num_, den_;
  int ram_ = 1;
  void normalize();
};

// evaluate a parsed expression with variables x/X and t over F_q (ram 1)
BivRat eval_bivariate(const Expr& e, const Fq& k);
BivRat eval_bivariate(const std::string& text, const Fq& k);

// expanded deterministic form "N/D", monomials c*X^a*t^b sorted by X-degree
// then t-degree, both descending; fractional t-exponents (ram > 1) print as
// t^(a/ram) and are flagged by the caller where re-parsing matters
std::string format_bivrat(const BivRat& f);
std::string format_bivpoly(const BivPoly& f, int ram);

}  // namespace hurwitz
