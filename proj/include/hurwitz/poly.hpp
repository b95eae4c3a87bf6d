#pragma once

// Dense univariate polynomials over F_q.  The same type doubles as the
// coefficient ring of the bivariate layer (polynomials in the uniformizer
// tau), so nothing here assumes a particular variable name.
//
// Factorization is deterministic: squarefree split (char-p aware: f' == 0
// means f is a p-th power of the Frobenius-rooted polynomial), then
// distinct-degree, then equal-degree splitting driven by a fixed probe
// sequence.  Factors are reported monic and canonically sorted.

#include <utility>
#include <vector>

#include "hurwitz/fq.hpp"

namespace hurwitz {

class Poly {
 public:
  Poly() : k_(nullptr) {}
  explicit Poly(const Fq& k) : k_(&k) {}
  Poly(const Fq& k, std::vector<FqEl> coeffs) : k_(&k), c_(std::move(coeffs)) {
    trim();
  }
  static Poly x(const Fq& k) { return Poly(k, {0, 1}); }
  static Poly constant(const Fq& k, FqEl c) { return Poly(k, {c}); }
  // (x - r)
  static Poly linear_root(const Fq& k, FqEl r) { return Poly(k, {k.neg(r), 1}); }

  const Fq& field() const;
  bool valid() const { return k_ != nullptr; }
  int deg() const { return (int)c_.size() - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  FqEl coeff(int i) const {
    return (i >= 0 && i < (int)c_.size()) ? c_[i] : 0;
  }
  const std::vector<FqEl>& coeffs() const { return c_; }
  FqEl lc() const { return c_.empty() ? 0 : c_.back(); }
  // order of vanishing at 0 (lowest nonzero coefficient); -1 for zero poly
  int ord0() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(FqEl c) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }

  // quotient and remainder; divisor must be nonzero
  std::pair<Poly, Poly> divrem(const Poly& d) const;
  Poly operator/(const Poly& d) const { return divrem(d).first; }
  Poly operator%(const Poly& d) const { return divrem(d).second; }
  bool divides(const Poly& g) const;  // this | g

  Poly monic() const;
  static Poly gcd(Poly a, Poly b);  // monic gcd
  Poly pow(long long e) const;

  Poly derivative() const;
  FqEl eval(FqEl a) const;
  // f(a*x + b)
  Poly compose_affine(FqEl a, FqEl b) const;
  // f(x^e)
  Poly inflate(int e) const;
  // true iff f = g(x^p) for some g; g returned through out (coefficients get
  // Frobenius p-th roots so that out^p == f when f is a perfect p-th power
  // of a polynomial in x^1... i.e. f(x) = (out(x))^p termwise over F_q)
  bool pth_power_root(Poly& out) const;

  // canonical factorization into monic irreducibles, sorted by (degree,
  // packed coefficient order); the leading unit is returned separately
  struct Factorization {
    FqEl unit;
    std::vector<std::pair<Poly, int>> factors;
  };
  Factorization factor() const;
  // roots in F_q with multiplicities, sorted by canonical element order
  std::vector<std::pair<FqEl, int>> roots() const;

  // truncated power series helpers (constant term of the divisor must be a
  // unit): first n coefficients of 1/f resp. g/f
  Poly series_inverse(int n) const;
  static Poly series_div(const Poly& g, const Poly& f, int n);

 private:
  const Fq* k_;
  std::vector<FqEl> c_;
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  friend bool poly_less(const Poly& a, const Poly& b);
};

// canonical order used for sorting factors: degree, then packed coefficients
// from the top down
bool poly_less(const Poly& a, const Poly& b);

}  // namespace hurwitz
