#include "hurwitz/mpoly.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <utility>

namespace hurwitz {

int total_degree(const ExpVec& e) {
  int d = 0;
  for (uint16_t x : e) d += x;
  return d;
}

int degrevlex_cmp(const ExpVec& a, const ExpVec& b) {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

namespace {

bool term_greater(const MTerm& s, const MTerm& t) {
  return degrevlex_cmp(s.e, t.e) > 0;
}

bool exp_divides(const ExpVec& a, const ExpVec& b) {  // x^a | x^b
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

ExpVec exp_sub(const ExpVec& a, const ExpVec& b) {
  ExpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = (uint16_t)(a[i] - b[i]);
  return r;
}

ExpVec exp_lcm(const ExpVec& a, const ExpVec& b) {
  ExpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

uint32_t mod_inv(uint32_t a, uint32_t p) {  // p prime, a != 0
  uint32_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = (uint32_t)((uint64_t)r * b % p);
    b = (uint32_t)((uint64_t)b * b % p);
    e >>= 1;
  }
  return r;
}

}  // namespace

MPoly MPoly::constant(uint32_t p, int nvars, long long c) {
  MPoly f(p, nvars);
  long long r = c % (long long)p;
  if (r < 0) r += p;
  if (r != 0) f.t_.push_back({ExpVec(nvars, 0), (uint32_t)r});
  return f;
}

MPoly MPoly::variable(uint32_t p, int nvars, int i) {
  MPoly f(p, nvars);
  ExpVec e(nvars, 0);
  e[i] = 1;
  f.t_.push_back({std::move(e), 1});
  return f;
}

MPoly MPoly::monomial(uint32_t p, ExpVec e, uint32_t c) {
  MPoly f(p, (int)e.size());
  c %= p;
  if (c != 0) f.t_.push_back({std::move(e), c});
  return f;
}

MPoly MPoly::tail() const {
  MPoly r(p_, n_);
  if (t_.size() > 1) r.t_.assign(t_.begin() + 1, t_.end());
  return r;
}

bool MPoly::eq_terms(const MPoly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (size_t i = 0; i < t_.size(); ++i)
    if (t_[i].c != o.t_[i].c || t_[i].e != o.t_[i].e) return false;
  return true;
}

void MPoly::from_unsorted(std::vector<MTerm> raw) {
  std::sort(raw.begin(), raw.end(), term_greater);
  t_.clear();
  for (auto& s : raw) {
    if (!t_.empty() && t_.back().e == s.e) {
      t_.back().c = (t_.back().c + s.c) % p_;
    } else {
      t_.push_back(std::move(s));
    }
  }
  t_.erase(std::remove_if(t_.begin(), t_.end(),
                          [](const MTerm& s) { return s.c == 0; }),
           t_.end());
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r(p_, n_);
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    int cmp = i == t_.size()     ? -1
              : j == o.t_.size() ? 1
                                 : degrevlex_cmp(t_[i].e, o.t_[j].e);
    if (cmp > 0) {
      r.t_.push_back(t_[i++]);
    } else if (cmp < 0) {
      r.t_.push_back(o.t_[j++]);
    } else {
      uint32_t c = (t_[i].c + o.t_[j].c) % p_;
      if (c != 0) r.t_.push_back({t_[i].e, c});
      ++i, ++j;
    }
  }
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + o.scaled(p_ - 1); }

MPoly MPoly::scaled(uint32_t c) const {
  c %= p_;
  MPoly r(p_, n_);
  if (c == 0) return r;
  r.t_ = t_;
  for (auto& s : r.t_) s.c = (uint32_t)((uint64_t)s.c * c % p_);
  return r;
}

MPoly MPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(mod_inv(t_.front().c, p_));
}

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r(p_, n_);
  if (is_zero() || o.is_zero()) return r;
  std::vector<MTerm> raw;
  raw.reserve(t_.size() * o.t_.size());
  for (const auto& s : t_) {
    for (const auto& t : o.t_) {
      ExpVec e(n_);
      for (int v = 0; v < n_; ++v) e[v] = (uint16_t)(s.e[v] + t.e[v]);
      raw.push_back({std::move(e), (uint32_t)((uint64_t)s.c * t.c % p_)});
    }
  }
  r.from_unsorted(std::move(raw));
  return r;
}

MPoly MPoly::reduce_by(const MPoly& g, const ExpVec& shift, uint32_t c) const {
  // multiplying every monomial of g by x^shift preserves the term order, so
  // the shifted copy is already sorted and a single merge suffices
  MPoly sg(p_, n_);
  sg.t_.reserve(g.t_.size());
  for (const auto& s : g.t_) {
    ExpVec e(n_);
    for (int v = 0; v < n_; ++v) e[v] = (uint16_t)(s.e[v] + shift[v]);
    sg.t_.push_back({std::move(e), (uint32_t)((uint64_t)s.c * c % p_)});
  }
  return *this - sg;
}

std::string MPoly::str(const std::vector<std::string>& names) const {
  if (is_zero()) return "0";
  std::string out;
  for (const auto& s : t_) {
    if (!out.empty()) out += "+";
    std::string mono;
    for (int v = 0; v < n_; ++v) {
      if (s.e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[v];
      if (s.e[v] > 1) mono += "^" + std::to_string(s.e[v]);
    }
    if (mono.empty()) {
      out += std::to_string(s.c);
    } else if (s.c == 1) {
      out += mono;
    } else {
      out += std::to_string(s.c) + "*" + mono;
    }
  }
  return out;
}

MPoly normal_form(const MPoly& f, const std::vector<MPoly>& G) {
  MPoly h = f;
  std::vector<MTerm> rem;  // irreducible leads peel off in descending order
  while (!h.is_zero()) {
    bool step = false;
    for (const auto& g : G) {
      if (g.is_zero()) continue;
      if (exp_divides(g.lead().e, h.lead().e)) {
        uint32_t c = (uint32_t)((uint64_t)h.lead().c *
                                mod_inv(g.lead().c, f.p()) % f.p());
        h = h.reduce_by(g, exp_sub(h.lead().e, g.lead().e), c);
        step = true;
        break;
      }
    }
    if (!step) {
      rem.push_back(h.lead());
      h = h.tail();
    }
  }
  MPoly r(f.p(), f.nvars());
  for (const auto& s : rem) r = r + MPoly::monomial(f.p(), s.e, s.c);
  return r;
}

namespace {

struct SPair {
  int i, j;
  ExpVec lcm;
  int deg;
};

bool pair_before(const SPair& a, const SPair& b) {
  if (a.deg != b.deg) return a.deg < b.deg;
  int c = degrevlex_cmp(a.lcm, b.lcm);
  if (c != 0) return c < 0;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

MPoly s_poly(const MPoly& f, const MPoly& g) {  // both monic
  ExpVec l = exp_lcm(f.lead().e, g.lead().e);
  MPoly zero(f.p(), f.nvars());
  // x^(l-lead f) * f  -  x^(l-lead g) * g
  return zero.reduce_by(f, exp_sub(l, f.lead().e), f.p() - 1)
      .reduce_by(g, exp_sub(l, g.lead().e), 1);
}

}  // namespace

std::vector<MPoly> groebner_basis(std::vector<MPoly> gens, uint64_t pair_cap) {
  uint32_t p = 0;
  int n = 0;
  for (const auto& g : gens) {
    if (g.p() != 0) {
      p = g.p();
      n = g.nvars();
      break;
    }
  }
  std::vector<MPoly> G;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.is_constant()) return {MPoly::constant(p, n, 1)};
    G.push_back(g.monic());
  }
  if (G.empty()) return {};

  std::vector<SPair> pending;
  auto push_pairs = [&](int k) {
    for (int i = 0; i < k; ++i) {
      ExpVec l = exp_lcm(G[i].lead().e, G[k].lead().e);
      pending.push_back({i, k, l, total_degree(l)});
    }
  };
  for (int k = 1; k < (int)G.size(); ++k) push_pairs(k);

  std::set<std::pair<int, int>> seen;  // popped pairs, for the chain criterion
  uint64_t reduced = 0;
  while (!pending.empty()) {
    auto it = std::min_element(pending.begin(), pending.end(), pair_before);
    SPair pr = *it;
    pending.erase(it);
    seen.insert({pr.i, pr.j});

    // product criterion: coprime leading monomials reduce to zero
    ExpVec prod(n, 0);
    bool coprime = true;
    for (int v = 0; v < n && coprime; ++v)
      if (G[pr.i].lead().e[v] > 0 && G[pr.j].lead().e[v] > 0) coprime = false;
    if (coprime) continue;

    // chain criterion: some already-treated k with LM_k | lcm(i,j)
    bool skip = false;
    for (int k = 0; k < (int)G.size() && !skip; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!exp_divides(G[k].lead().e, pr.lcm)) continue;
      auto a = std::minmax(pr.i, k), b = std::minmax(pr.j, k);
      if (seen.count({a.first, a.second}) && seen.count({b.first, b.second}))
        skip = true;
    }
    if (skip) continue;

    if (++reduced > pair_cap) throw EffortCap(reduced, G.size());
    MPoly r = normal_form(s_poly(G[pr.i], G[pr.j]), G);
    if (r.is_zero()) continue;
    if (r.is_constant()) return {MPoly::constant(p, n, 1)};
    G.push_back(r.monic());
    push_pairs((int)G.size() - 1);
  }

  // minimalize: drop any element whose lead is divisible by another's
  std::vector<MPoly> minimal;
  for (size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      if (!exp_divides(G[j].lead().e, G[i].lead().e)) continue;
      // on equal leads keep the earlier element only
      redundant = G[j].lead().e != G[i].lead().e || j < i;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  // tail-reduce each against the others; leads are now pairwise indivisible,
  // so normal_form can only rewrite tails
  std::vector<MPoly> reduced_basis = minimal;
  for (size_t i = 0; i < reduced_basis.size(); ++i) {
    std::vector<MPoly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    reduced_basis[i] = normal_form(reduced_basis[i], others).monic();
  }
  std::sort(reduced_basis.begin(), reduced_basis.end(),
            [](const MPoly& a, const MPoly& b) {
              return degrevlex_cmp(a.lead().e, b.lead().e) > 0;
            });
  return reduced_basis;
}

}  // namespace hurwitz
