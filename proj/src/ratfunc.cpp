#include "hurwitz/ratfunc.hpp"

#include <stdexcept>

namespace hurwitz {

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RatFunc::normalize() {
  if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  const Fq& k = num_.field();
  if (num_.is_zero()) {
    den_ = Poly::constant(k, 1);
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.deg() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  FqEl u = den_.lc();
  if (u != 1) {
    FqEl ui = k.inv(u);
    num_ = num_.scaled(ui);
    den_ = den_.scaled(ui);
  }
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RatFunc RatFunc::operator-(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }
RatFunc RatFunc::operator*(const RatFunc& o) const {
  return RatFunc(num_ * o.num_, den_ * o.den_);
}
RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw std::domain_error("RatFunc: division by zero");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::pow(long long e) const {
  const Fq& k = field();
  if (e == 0) return constant(k, 1);
  if (e < 0) {
    if (is_zero()) throw std::domain_error("RatFunc: negative power of zero");
    return RatFunc(den_, num_).pow(-e);
  }
  return RatFunc(num_.pow(e), den_.pow(e));
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFunc RatFunc::compose_affine(FqEl a, FqEl b) const {
  return RatFunc(num_.compose_affine(a, b), den_.compose_affine(a, b));
}

int RatFunc::ord_at(FqEl a) const {
  if (is_zero()) throw std::domain_error("RatFunc: order of zero function");
  const Fq& k = field();
  Poly lin = Poly::linear_root(k, a);
  int o = 0;
  Poly n = num_;
  while (true) {
    auto [q, r] = n.divrem(lin);
    if (!r.is_zero()) break;
    ++o;
    n = q;
  }
  Poly d = den_;
  while (true) {
    auto [q, r] = d.divrem(lin);
    if (!r.is_zero()) break;
    --o;
    d = q;
  }
  return o;
}

int RatFunc::ord_at_infinity() const {
  if (is_zero()) throw std::domain_error("RatFunc: order of zero function");
  return den_.deg() - num_.deg();
}

int RatFunc::ord_at_factor(const Poly& irr) const {
  if (is_zero()) throw std::domain_error("RatFunc: order of zero function");
  int o = 0;
  Poly n = num_;
  while (true) {
    auto [q, r] = n.divrem(irr);
    if (!r.is_zero()) break;
    ++o;
    n = q;
  }
  Poly d = den_;
  while (true) {
    auto [q, r] = d.divrem(irr);
    if (!r.is_zero()) break;
    --o;
    d = q;
  }
  return o;
}

FqEl RatFunc::residue_at(FqEl a) const {
  if (is_zero()) return 0;
  const Fq& k = field();
  // shift to 0: f(x+a) = N1/(x^e * D0) with D0(0) != 0; residue is the
  // coefficient of x^(e-1) in the series N1/D0
  Poly n1 = num_.compose_affine(1, a);
  Poly d1 = den_.compose_affine(1, a);
  int e = 0;
  Poly xp = Poly::x(k);
  while (d1.coeff(0) == 0 && !d1.is_zero()) {
    d1 = d1 / xp;
    ++e;
  }
  if (e == 0) return 0;
  Poly ser = Poly::series_div(n1, d1, e);
  return ser.coeff(e - 1);
}

FqEl RatFunc::residue_at_infinity() const {
  if (is_zero()) return 0;
  const Fq& k = field();
  // with u = 1/x, f = x^(degN - degD) * Nrev(u)/Drev(u), so the coefficient
  // of x^{-1} in the expansion of f at infinity is the coefficient of
  // u^(degN - degD + 1) in the series Nrev/Drev; the residue of f dx at
  // infinity is minus that coefficient
  int dn = num_.deg(), dd = den_.deg();
  int target = dn - dd + 1;
  if (target < 0) return 0;
  std::vector<FqEl> nrev(dn + 1), drev(dd + 1);
  for (int i = 0; i <= dn; ++i) nrev[i] = num_.coeff(dn - i);
  for (int i = 0; i <= dd; ++i) drev[i] = den_.coeff(dd - i);
  Poly ser = Poly::series_div(Poly(k, nrev), Poly(k, drev), target + 1);
  return k.neg(ser.coeff(target));
}

std::pair<Poly, RatFunc> RatFunc::split_polynomial_part() const {
  auto [q, r] = num_.divrem(den_);
  return {q, RatFunc(r, den_)};
}

bool RatFunc::pth_power_root(RatFunc& out) const {
  Poly rn, rd;
  if (!num_.pth_power_root(rn) || !den_.pth_power_root(rd)) return false;
  out = RatFunc(rn, rd);
  return true;
}

}  // namespace hurwitz
