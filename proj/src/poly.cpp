#include "hurwitz/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace hurwitz {

const Fq& Poly::field() const {
  if (!k_) throw std::logic_error("Poly: uninitialized field");
  return *k_;
}

int Poly::ord0() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return (int)i;
  return -1;
}

Poly Poly::operator+(const Poly& o) const {
  const Fq& k = field();
  std::vector<FqEl> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = k.add(coeff((int)i), o.coeff((int)i));
  return Poly(k, std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  const Fq& k = field();
  std::vector<FqEl> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = k.neg(c_[i]);
  return Poly(k, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  const Fq& k = field();
  if (is_zero() || o.is_zero()) return Poly(k);
  std::vector<FqEl> r(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      r[i + j] = k.add(r[i + j], k.mul(c_[i], o.c_[j]));
  }
  return Poly(k, std::move(r));
}

Poly Poly::scaled(FqEl c) const {
  const Fq& k = field();
  std::vector<FqEl> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = k.mul(c_[i], c);
  return Poly(k, std::move(r));
}

std::pair<Poly, Poly> Poly::divrem(const Poly& d) const {
  const Fq& k = field();
  if (d.is_zero()) throw std::domain_error("Poly: division by zero");
  if (deg() < d.deg()) return {Poly(k), *this};
  std::vector<FqEl> rem = c_, quo(deg() - d.deg() + 1, 0);
  FqEl dinv = k.inv(d.lc());
  for (int i = deg(); i >= d.deg(); --i) {
    FqEl c = rem[i];
    if (c == 0) continue;
    FqEl f = k.mul(c, dinv);
    quo[i - d.deg()] = f;
    for (int j = 0; j <= d.deg(); ++j)
      rem[i - d.deg() + j] = k.sub(rem[i - d.deg() + j], k.mul(f, d.c_[j]));
  }
  return {Poly(k, std::move(quo)), Poly(k, std::move(rem))};
}

bool Poly::divides(const Poly& g) const {
  if (is_zero()) return g.is_zero();
  return g.divrem(*this).second.is_zero();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(field().inv(lc()));
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly Poly::pow(long long e) const {
  if (e < 0) throw std::domain_error("Poly: negative power");
  const Fq& k = field();
  Poly r = constant(k, 1), base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Poly Poly::derivative() const {
  const Fq& k = field();
  if (c_.size() <= 1) return Poly(k);
  std::vector<FqEl> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = k.mul(k.from_int((long long)i), c_[i]);
  return Poly(k, std::move(r));
}

FqEl Poly::eval(FqEl a) const {
  const Fq& k = field();
  FqEl v = 0;
  for (size_t i = c_.size(); i-- > 0;) v = k.add(k.mul(v, a), c_[i]);
  return v;
}

Poly Poly::compose_affine(FqEl a, FqEl b) const {
  const Fq& k = field();
  Poly arg(k, {b, a}), r(k);
  for (size_t i = c_.size(); i-- > 0;) r = r * arg + constant(k, c_[i]);
  return r;
}

Poly Poly::inflate(int e) const {
  const Fq& k = field();
  if (e <= 0) throw std::domain_error("Poly: inflate exponent must be positive");
  if (is_zero()) return Poly(k);
  std::vector<FqEl> r((c_.size() - 1) * e + 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) r[i * e] = c_[i];
  return Poly(k, std::move(r));
}

bool Poly::pth_power_root(Poly& out) const {
  const Fq& k = field();
  uint32_t p = k.p();
  if (is_zero()) {
    out = Poly(k);
    return true;
  }
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0 && i % p != 0) return false;
  std::vector<FqEl> r(c_.size() / p + 1, 0);
  for (size_t i = 0; i < c_.size(); i += p) r[i / p] = k.pth_root(c_[i]);
  out = Poly(k, std::move(r));
  return true;
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  for (int i = a.deg(); i >= 0; --i)
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  return false;
}

namespace {

// x^(q^e) mod f, iterated Frobenius by repeated q-powering
Poly powmod(const Poly& base, uint64_t e, const Poly& f) {
  const Fq& k = base.field();
  Poly r = Poly::constant(k, 1), b = base % f;
  while (e) {
    if (e & 1) r = (r * b) % f;
    b = (b * b) % f;
    e >>= 1;
  }
  return r;
}

// squarefree decomposition: appends (squarefree g_i, multiplicity m_i) pairs
// with f = unit * prod g_i^{m_i}; char-p aware (Yun's algorithm plus a
// Frobenius-root recursion for the part whose multiplicities are divisible
// by p, which the derivative cannot see)
void squarefree_decompose(const Poly& f, int mult,
                          std::vector<std::pair<Poly, int>>& out) {
  const Fq& k = f.field();
  uint32_t p = k.p();
  if (f.deg() <= 0) return;
  Poly d = f.derivative();
  if (d.is_zero()) {
    Poly root;
    if (!f.pth_power_root(root))
      throw std::logic_error("Poly: zero derivative but not a p-th power");
    squarefree_decompose(root, mult * (int)p, out);
    return;
  }
  Poly g = Poly::gcd(f, d);
  Poly w = (f / g).monic();  // product of factors with p-free multiplicity
  int i = 1;
  while (w.deg() > 0) {
    Poly y = Poly::gcd(w, g);  // factors with multiplicity > i
    Poly exact = (w / y).monic();
    if (exact.deg() > 0) out.emplace_back(exact, mult * i);
    w = y;
    g = (g / y).monic();
    ++i;
  }
  if (g.deg() > 0) {
    // remaining factors have multiplicity divisible by p; they are disjoint
    // from the ones already emitted, so no merging is needed
    Poly root;
    if (!g.pth_power_root(root))
      throw std::logic_error("Poly: p-divisible part not a p-th power");
    squarefree_decompose(root, mult * (int)p, out);
  }
}

// deterministic probe polynomial of degree < n (fixed LCG stream per seed)
Poly probe_poly(const Fq& k, int n, uint64_t seed) {
  std::vector<FqEl> c((size_t)std::max(n, 1));
  uint64_t s = (seed + 1) * 6364136223846793005ULL + 1442695040888963407ULL;
  for (auto& ci : c) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    ci = (FqEl)((s >> 33) % k.q());
  }
  return Poly(k, std::move(c));
}

// equal-degree splitting of a monic squarefree product of irreducibles of
// degree d, via Cantor–Zassenhaus with a deterministic probe sequence
void edf(const Poly& f, int d, std::vector<Poly>& out) {
  const Fq& k = f.field();
  if (f.deg() == d) {
    out.push_back(f.monic());
    return;
  }
  constexpr uint64_t kMaxQd = 1ULL << 62;
  uint64_t qd = 1;
  for (int i = 0; i < d; ++i) {
    if (qd > kMaxQd / k.q())
      throw std::domain_error("Poly: equal-degree splitting order overflow");
    qd *= k.q();
  }
  for (uint64_t seed = 0; seed < 4096; ++seed) {
    Poly h = probe_poly(k, f.deg(), seed);
    Poly t(k);
    if (k.p() == 2) {
      // trace map T(h) = h + h^2 + ... + h^(2^(md-1)) mod f
      uint32_t md = k.m() * (uint32_t)d;
      Poly cur = h % f;
      for (uint32_t i = 0; i < md; ++i) {
        t = t + cur;
        cur = (cur * cur) % f;
      }
    } else {
      t = powmod(h, (qd - 1) / 2, f) - Poly::constant(k, 1);
    }
    Poly g = Poly::gcd(t, f);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      edf(g, d, out);
      edf((f / g).monic(), d, out);
      return;
    }
  }
  throw std::logic_error("Poly: equal-degree splitting exhausted probes");
}

// full factorization of a monic squarefree polynomial
void factor_squarefree(const Poly& f, std::vector<Poly>& out) {
  const Fq& k = f.field();
  Poly rem = f.monic();
  Poly h = Poly::x(k);
  int d = 0;
  while (rem.deg() > 0) {
    ++d;
    if (rem.deg() < 2 * d) {
      out.push_back(rem.monic());
      break;
    }
    h = powmod(h, k.q(), rem);
    Poly g = Poly::gcd(h - Poly::x(k), rem);
    if (g.deg() > 0) {
      edf(g, d, out);
      rem = (rem / g).monic();
      h = h % rem;
    }
  }
}

}  // namespace

Poly::Factorization Poly::factor() const {
  if (is_zero()) throw std::domain_error("Poly: factor of zero");
  Factorization fz;
  fz.unit = lc();
  if (deg() == 0) return fz;
  std::vector<std::pair<Poly, int>> sq;
  squarefree_decompose(monic(), 1, sq);
  for (auto& [g, mult] : sq) {
    std::vector<Poly> irr;
    factor_squarefree(g, irr);
    for (auto& f : irr) fz.factors.emplace_back(f, mult);
  }
  std::sort(fz.factors.begin(), fz.factors.end(),
            [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  return fz;
}

std::vector<std::pair<FqEl, int>> Poly::roots() const {
  std::vector<std::pair<FqEl, int>> rs;
  if (deg() <= 0) return rs;
  auto fz = factor();
  for (auto& [f, mult] : fz.factors)
    if (f.deg() == 1) rs.emplace_back(field().neg(f.coeff(0)), mult);
  std::sort(rs.begin(), rs.end());
  return rs;
}

Poly Poly::series_inverse(int n) const {
  const Fq& k = field();
  if (coeff(0) == 0) throw std::domain_error("Poly: series inverse needs unit constant term");
  std::vector<FqEl> r(n, 0);
  FqEl c0 = k.inv(coeff(0));
  r[0] = c0;
  for (int i = 1; i < n; ++i) {
    FqEl s = 0;
    for (int j = 1; j <= i; ++j) s = k.add(s, k.mul(coeff(j), r[i - j]));
    r[i] = k.neg(k.mul(s, c0));
  }
  return Poly(k, std::move(r));
}

Poly Poly::series_div(const Poly& g, const Poly& f, int n) {
  const Fq& k = f.field();
  Poly fi = f.series_inverse(n);
  Poly prod = g * fi;
  std::vector<FqEl> r(n, 0);
  for (int i = 0; i < n; ++i) r[i] = prod.coeff(i);
  return Poly(k, std::move(r));
}

}  // namespace hurwitz
