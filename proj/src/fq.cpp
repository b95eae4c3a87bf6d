#include "hurwitz/fq.hpp"

#include <stdexcept>

namespace hurwitz {
namespace {

// --- plain modular polynomial helpers used only while building a field ---
// polynomials over F_p as coefficient vectors, lowest degree first

using PVec = std::vector<uint32_t>;

void ptrim(PVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PVec pmulmod(const PVec& a, const PVec& b, const PVec& f, uint32_t p) {
  // f monic of degree m; result reduced mod f
  if (a.empty() || b.empty()) return {};
  PVec r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + (uint64_t)a[i] * b[j]) % p;
  size_t m = f.size() - 1;
  // eliminate coefficients from the top down: r[d] * x^(d-m) * f
  for (size_t d = r.size(); d-- > m;) {
    uint32_t c = r[d];
    if (c == 0) continue;
    for (size_t k = 0; k <= m; ++k) {
      uint64_t sub = (uint64_t)c * f[k] % p;
      size_t idx = d - m + k;
      r[idx] = (uint32_t)((r[idx] + p - sub) % p);
    }
  }
  r.resize(m);
  ptrim(r);
  return r;
}

PVec ppowmod(PVec base, uint64_t e, const PVec& f, uint32_t p) {
  PVec r{1};
  while (e) {
    if (e & 1) r = pmulmod(r, base, f, p);
    base = pmulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

PVec pgcd(PVec a, PVec b, uint32_t p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    // a mod b
    uint32_t lb = b.back();
    // inverse of lb mod p
    uint32_t li = 1;
    for (uint32_t i = 1; i < p; ++i)
      if ((uint64_t)lb * i % p == 1) { li = i; break; }
    while (a.size() >= b.size() && !a.empty()) {
      uint32_t c = (uint32_t)((uint64_t)a.back() * li % p);
      size_t off = a.size() - b.size();
      for (size_t k = 0; k < b.size(); ++k)
        a[off + k] = (uint32_t)((a[off + k] + p - (uint64_t)c * b[k] % p) % p);
      ptrim(a);
      if (a.size() < b.size()) break;
    }
    std::swap(a, b);
  }
  return a;
}

bool is_irreducible(const PVec& f, uint32_t p, uint32_t m) {
  // x^(p^m) == x mod f, and gcd(x^(p^(m/l)) - x, f) = 1 for primes l | m
  PVec x{0, 1};
  uint64_t pm = 1;
  for (uint32_t i = 0; i < m; ++i) pm *= p;
  PVec xq = ppowmod(x, pm, f, p);
  if (xq != x) return false;
  for (uint32_t l = 2; l <= m; ++l) {
    if (m % l != 0) continue;
    bool lp = true;
    for (uint32_t d = 2; d * d <= l; ++d)
      if (l % d == 0) { lp = false; break; }
    if (!lp) continue;
    uint64_t pk = 1;
    for (uint32_t i = 0; i < m / l; ++i) pk *= p;
    PVec xk = ppowmod(x, pk, f, p);
    // xk - x
    PVec diff = xk;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    ptrim(diff);
    PVec g = pgcd(diff, f, p);
    if (g.size() > 1) return false;
  }
  return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> fs;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) fs.push_back(n);
  return fs;
}

bool is_primitive_root_poly(const PVec& f, uint32_t p, uint64_t q) {
  // does x generate (F_p[x]/f)^* ?
  PVec x{0, 1};
  for (uint64_t l : prime_factors(q - 1)) {
    PVec r = ppowmod(x, (q - 1) / l, f, p);
    if (r == PVec{1}) return false;
  }
  return true;
}

}  // namespace

Fq::Fq(uint32_t p, uint32_t m) : p_(p), m_(m) {
  if (p < 2 || m < 1) throw std::invalid_argument("Fq: need p >= 2, m >= 1");
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("Fq: p is not prime");
  uint64_t q = 1;
  for (uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > (1u << 22))
      throw std::invalid_argument("Fq: field size p^m exceeds 2^22 (unsupported)");
  }
  q_ = (uint32_t)q;

  uint32_t g = 1;  // generator as packed element
  if (m_ == 1) {
    // smallest primitive root mod p
    auto fs = prime_factors(p - 1);
    for (uint32_t c = 1; c < p; ++c) {
      bool ok = true;
      for (uint64_t l : fs) {
        // c^((p-1)/l) mod p
        uint64_t e = (p - 1) / l, b = c, r = 1;
        while (e) {
          if (e & 1) r = r * b % p;
          b = b * b % p;
          e >>= 1;
        }
        if (r == 1 && p > 2) { ok = false; break; }
      }
      if (ok) { g = c; break; }
    }
    mod_tail_ = {g};
    antilog_.assign(q_ - 1 == 0 ? 1 : q_ - 1, 1);
    if (q_ > 2) {
      uint64_t v = 1;
      for (uint32_t i = 0; i < q_ - 1; ++i) {
        antilog_[i] = (uint32_t)v;
        v = v * g % p;
      }
    }
  } else {
    // first monic irreducible-and-primitive polynomial in packed order
    PVec f;
    bool found = false;
    for (uint32_t packed = 0; packed < q_ && !found; ++packed) {
      f.assign(m_ + 1, 0);
      f[m_] = 1;
      uint32_t v = packed;
      for (uint32_t i = 0; i < m_; ++i) {
        f[i] = v % p;
        v /= p;
      }
      if (is_irreducible(f, p, m_) && is_primitive_root_poly(f, p, q_)) {
        found = true;
        mod_tail_.assign(f.begin(), f.end() - 1);
      }
    }
    if (!found) throw std::logic_error("Fq: no primitive modulus found");
    f.assign(m_ + 1, 0);
    f[m_] = 1;
    for (uint32_t i = 0; i < m_; ++i) f[i] = mod_tail_[i];
    // antilog table: successive powers of x mod f, packed
    antilog_.assign(q_ - 1, 0);
    PVec cur{1};
    for (uint32_t i = 0; i < q_ - 1; ++i) {
      uint32_t packed = 0, sh = 1;
      for (uint32_t d = 0; d < m_; ++d, sh *= p)
        packed += (d < cur.size() ? cur[d] : 0) * sh;
      antilog_[i] = packed;
      cur = pmulmod(cur, PVec{0, 1}, f, p);
    }
  }
  log_.assign(q_, 0);
  for (uint32_t i = 0; i + 1 < q_; ++i) log_[antilog_[i]] = i;

  pow_p_m1_mod_ = 1;
  if (q_ > 2) {
    for (uint32_t i = 0; i + 1 < m_; ++i) pow_p_m1_mod_ = pow_p_m1_mod_ * p_ % (q_ - 1);
  }
}

const Fq& Fq::get(uint32_t p, uint32_t m) {
  static std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<Fq>> cache;
  auto key = std::make_pair(p, m);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<Fq>(new Fq(p, m))).first;
  return *it->second;
}

FqEl Fq::inv(FqEl a) const {
  if (a == 0) throw std::domain_error("Fq: inverse of zero");
  uint32_t l = log_[a];
  return antilog_[l == 0 ? 0 : q_ - 1 - l];
}

FqEl Fq::pow(FqEl a, long long e) const {
  if (a == 0) {
    if (e < 0) throw std::domain_error("Fq: negative power of zero");
    return e == 0 ? 1 : 0;
  }
  long long ord = q_ - 1;
  long long r = e % ord;
  if (r < 0) r += ord;
  return antilog_[(uint64_t)log_[a] * r % ord];
}

uint32_t Fq::trace_to_prime(FqEl a) const {
  FqEl t = 0, cur = a;
  for (uint32_t i = 0; i < m_; ++i) {
    t = add(t, cur);
    cur = frobenius(cur);
  }
  if (t >= p_) throw std::logic_error("Fq: trace left the prime field");
  return t;
}

std::optional<FqEl> Fq::artin_schreier_solve(FqEl c) const {
  if (trace_to_prime(c) != 0) return std::nullopt;
  // solve (Frob - Id) y = c as an F_p-linear system in the digit basis
  uint32_t n = m_;
  std::vector<std::vector<uint32_t>> A(n, std::vector<uint32_t>(n + 1, 0));
  for (uint32_t j = 0; j < n; ++j) {
    FqEl bj = 1;  // basis element g^j
    for (uint32_t i = 0; i < j; ++i) bj = mul(bj, gen());
    FqEl im = sub(frobenius(bj), bj);
    for (uint32_t i = 0, sh = 1; i < n; ++i, sh *= p_) A[i][j] = (im / sh) % p_;
  }
  for (uint32_t i = 0, sh = 1; i < n; ++i, sh *= p_) A[i][n] = (c / sh) % p_;
  // Gaussian elimination mod p
  std::vector<int> pivot_col(n, -1);
  uint32_t row = 0;
  for (uint32_t col = 0; col < n && row < n; ++col) {
    uint32_t sel = row;
    while (sel < n && A[sel][col] == 0) ++sel;
    if (sel == n) continue;
    std::swap(A[sel], A[row]);
    uint32_t piv = A[row][col], pinv = 1;
    for (uint32_t i = 1; i < p_; ++i)
      if ((uint64_t)piv * i % p_ == 1) { pinv = i; break; }
    for (uint32_t k = col; k <= n; ++k) A[row][k] = (uint32_t)((uint64_t)A[row][k] * pinv % p_);
    for (uint32_t r2 = 0; r2 < n; ++r2) {
      if (r2 == row || A[r2][col] == 0) continue;
      uint32_t f = A[r2][col];
      for (uint32_t k = col; k <= n; ++k)
        A[r2][k] = (uint32_t)((A[r2][k] + (uint64_t)(p_ - f) * A[row][k]) % p_);
    }
    pivot_col[row] = (int)col;
    ++row;
  }
  for (uint32_t r2 = row; r2 < n; ++r2)
    if (A[r2][n] != 0) return std::nullopt;  // inconsistent (trace should have caught it)
  FqEl y = 0;
  for (uint32_t r2 = 0; r2 < row; ++r2) {
    if (pivot_col[r2] < 0) continue;
    uint32_t sh = 1;
    for (int i = 0; i < pivot_col[r2]; ++i) sh *= p_;
    y += A[r2][n] * sh;
  }
  return y;
}

FqEl Fq::embed(const Fq& src, FqEl a, const Fq& dst) {
  if (src.p_ != dst.p_ || dst.m_ % src.m_ != 0)
    throw std::invalid_argument("Fq::embed: not an extension");
  if (&src == &dst || src.m_ == dst.m_) return a;
  if (src.m_ == 1) return a;  // residues are residues in any extension
  auto key = std::make_pair(src.p_, src.m_);
  auto it = dst.embed_cache_.find(key);
  FqEl img;
  if (it != dst.embed_cache_.end()) {
    img = it->second;
  } else {
    // canonically smallest root of src's modulus in dst
    img = 0;
    bool found = false;
    for (uint32_t cand = 0; cand < dst.q_; ++cand) {
      // evaluate x^m + sum mod_tail[i] x^i at cand by Horner
      FqEl v = 1;
      for (uint32_t i = src.m_; i-- > 0;) {
        v = dst.mul(v, cand);
        v = dst.add(v, dst.from_int(src.mod_tail_[i]));
      }
      if (v == 0) { img = cand; found = true; break; }
    }
    if (!found) throw std::logic_error("Fq::embed: modulus has no root in extension");
    dst.embed_cache_[key] = img;
  }
  // digits of a in base p evaluated at img
  FqEl r = 0, pw = 1;
  for (uint32_t i = 0, sh = 1; i < src.m_; ++i, sh *= src.p_) {
    uint32_t d = (a / sh) % src.p_;
    r = dst.add(r, dst.mul(d, pw));
    pw = dst.mul(pw, img);
  }
  return r;
}

std::string Fq::to_string(FqEl a) const {
  if (m_ == 1 || a < p_) return std::to_string(a % (m_ == 1 ? p_ : q_));
  std::string s;
  for (uint32_t i = m_; i-- > 0;) {
    uint32_t sh = 1;
    for (uint32_t k = 0; k < i; ++k) sh *= p_;
    uint32_t d = (a / sh) % p_;
    if (d == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(d);
    } else {
      if (d != 1) s += std::to_string(d) + "*";
      s += "a";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace hurwitz
