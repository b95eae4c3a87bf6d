#include "hurwitz/forms.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "hurwitz/algebra.hpp"
#include "hurwitz/mpoly.hpp"
#include "hurwitz/poly.hpp"

namespace hurwitz {

namespace {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void validate_entries(uint32_t p, const std::vector<int>& entries) {
  if (!is_prime(p)) throw std::invalid_argument("form type: p must be prime");
  for (int h : entries) {
    if (h < 2)
      throw std::invalid_argument("form type: entry " + std::to_string(h) +
                                  " is below 2");
    if (h % (int)p == 1)
      throw std::invalid_argument("form type: entry " + std::to_string(h) +
                                  " is 1 mod p");
  }
}

// binom[e][k] mod p for 0 <= k <= e <= n
std::vector<std::vector<uint32_t>> pascal(int n, uint32_t p) {
  std::vector<std::vector<uint32_t>> b(n + 1);
  for (int e = 0; e <= n; ++e) {
    b[e].assign(e + 1, 1);
    for (int k = 1; k < e; ++k) b[e][k] = (b[e - 1][k - 1] + b[e - 1][k]) % p;
  }
  return b;
}

FqEl embed_el(const Fq& src, FqEl a, const Fq& dst) {
  return &src == &dst ? a : Fq::embed(src, a, dst);
}

Poly embed_poly(const Poly& f, const Fq& dst) {
  if (&f.field() == &dst) return f;
  std::vector<FqEl> c(f.coeffs().size());
  for (size_t i = 0; i < c.size(); ++i)
    c[i] = Fq::embed(f.field(), f.coeffs()[i], dst);
  return Poly(dst, std::move(c));
}

// largest usable extension degree: the registry caps fields at q <= 2^22
bool field_fits(uint32_t p, long long m) {
  return m >= 1 && m * std::log2((double)p) <= 22.0;
}

// 1 / prod (x - poles[i])^{entries[i]} over K
RatFunc form_from_poles(const Fq& K, const std::vector<int>& entries,
                        const std::vector<FqEl>& poles) {
  Poly den = Poly::constant(K, 1);
  for (size_t i = 0; i < entries.size(); ++i)
    den = den * Poly::linear_root(K, poles[i]).pow(entries[i]);
  return RatFunc(Poly::constant(K, 1), den);
}

// Checks that `omega` really is a form of the given type -- constant
// numerator, pole orders (counted over the closure) matching the entries --
// and that it is exact.  On success returns the witness, with the pole list
// filled whenever the splitting field of the denominator stays within the
// registry's size cap.
std::optional<FormWitness> witness_from_density(const std::vector<int>& entries,
                                                const RatFunc& omega) {
  if (omega.is_zero() || !omega.num().is_constant()) return std::nullopt;
  const Fq& k0 = omega.field();
  auto fac = omega.den().factor();
  std::vector<int> orders;
  long long lcm_deg = 1;
  for (const auto& [irr, mult] : fac.factors) {
    for (int c = 0; c < irr.deg(); ++c) orders.push_back(mult);
    lcm_deg = std::lcm(lcm_deg, (long long)irr.deg());
  }
  std::sort(orders.begin(), orders.end(), std::greater<int>());
  if (orders != entries) return std::nullopt;
  if (!is_exact(omega).exact) return std::nullopt;

  FormWitness w;
  long long M = (long long)k0.m() * lcm_deg;
  if (field_fits(k0.p(), M)) {
    const Fq& K = Fq::get(k0.p(), (uint32_t)M);
    // roots grouped by pole order, ascending within each group
    std::map<int, std::vector<FqEl>, std::greater<int>> by_mult;
    for (const auto& [irr, mult] : fac.factors)
      for (const auto& [r, rm] : embed_poly(irr, K).roots()) {
        (void)rm;
        by_mult[mult].push_back(r);
      }
    for (auto& [mult, roots] : by_mult) std::sort(roots.begin(), roots.end());
    std::map<int, size_t> taken;
    w.field = &K;
    for (int h : entries) w.poles.push_back(by_mult[h][taken[h]++]);
    w.omega = form_from_poles(K, entries, w.poles);
  } else {
    w.field = &k0;
    w.omega = omega;
  }
  return w;
}

// ---- closed-form families (normalized entries, n >= 3) ----

struct FamilyHit {
  FormWitness witness;
  std::string name;
};

// three poles of order (p+1)/2: a_3 ranges over the roots of
// sum_i binom((p-1)/2, i)^2 x^{(p-1)/2 - i}, which is separable with nonzero
// constant term, so a root away from 0 and 1 exists once (p-1)/2 >= 2
std::optional<FamilyHit> family_half(const FormType& t) {
  const uint32_t p = t.p;
  if (p < 3 || t.entries.size() != 3) return std::nullopt;
  int h = ((int)p + 1) / 2;
  for (int e : t.entries)
    if (e != h) return std::nullopt;
  int d = ((int)p - 1) / 2;
  auto b = pascal(d, p);
  std::vector<FqEl> coeffs(d + 1);
  for (int i = 0; i <= d; ++i)
    coeffs[d - i] = (FqEl)((uint64_t)b[d][i] * b[d][i] % p);
  const Fq& kp = Fq::get(p, 1);
  Poly A(kp, std::move(coeffs));
  for (const auto& [irr, mult] : A.factor().factors) {
    (void)mult;
    if (!field_fits(p, irr.deg())) continue;
    const Fq& K = Fq::get(p, irr.deg());
    for (const auto& [a, rm] : embed_poly(irr, K).roots()) {
      (void)rm;
      if (a == K.zero() || a == K.one()) continue;
      auto w = witness_from_density(
          t.entries, form_from_poles(K, t.entries, {K.zero(), K.one(), a}));
      if (w) return FamilyHit{*w, "family:{(p+1)/2}^3"};
    }
  }
  return std::nullopt;
}

// {p-1, h1, h2}: candidate dx / (x^{p-1} (x-1)^{h1} (x-c)^{h2}) with
// c = (1-h2)/(h1-1); falls through when c collides with 0 or 1
std::optional<FamilyHit> family_pminus1(const FormType& t) {
  const uint32_t p = t.p;
  if (t.entries.size() != 3) return std::nullopt;
  const Fq& kp = Fq::get(p, 1);
  for (size_t big = 0; big < 3; ++big) {
    if (t.entries[big] != (int)p - 1) continue;
    std::vector<int> rest;
    for (size_t i = 0; i < 3; ++i)
      if (i != big) rest.push_back(t.entries[i]);
    std::set<std::pair<int, int>> orders = {{rest[0], rest[1]},
                                            {rest[1], rest[0]}};
    for (const auto& [h1, h2] : orders) {
      FqEl c = kp.div(kp.from_int(1 - h2), kp.from_int(h1 - 1));
      if (c == kp.zero() || c == kp.one()) continue;
      Poly den = Poly::x(kp).pow((int)p - 1) *
                 Poly::linear_root(kp, kp.one()).pow(h1) *
                 Poly::linear_root(kp, c).pow(h2);
      auto w = witness_from_density(t.entries,
                                    RatFunc(Poly::constant(kp, 1), den));
      if (w) return FamilyHit{*w, "family:{p-1,h1,h2}"};
    }
    break;  // entries are sorted; all copies of p-1 give the same split
  }
  return std::nullopt;
}

// {v}^{p-v+2}: dx / (x^v (x^{p-v+1} - 1)^v)
std::optional<FamilyHit> family_roots_of_unity(const FormType& t) {
  const uint32_t p = t.p;
  if (t.entries.empty()) return std::nullopt;
  int v = t.entries[0];
  for (int e : t.entries)
    if (e != v) return std::nullopt;
  if ((int)t.entries.size() != (int)p - v + 2) return std::nullopt;
  const Fq& kp = Fq::get(p, 1);
  std::vector<FqEl> cyc((int)p - v + 2, 0);
  cyc[0] = kp.neg(kp.one());
  cyc[(int)p - v + 1] = kp.one();
  Poly den = Poly::x(kp).pow(v) * Poly(kp, std::move(cyc)).pow(v);
  auto w =
      witness_from_density(t.entries, RatFunc(Poly::constant(kp, 1), den));
  if (w) return FamilyHit{*w, "family:{v}^(p-v+2)"};
  return std::nullopt;
}

// the two sporadic p = 5 solutions
std::optional<FamilyHit> family_p5_special(const FormType& t) {
  if (t.p != 5) return std::nullopt;
  const Fq& k5 = Fq::get(5, 1);
  Poly den;
  if (t.entries == std::vector<int>{3, 2, 2, 2}) {
    den = Poly::x(k5).pow(3) * Poly::linear_root(k5, 1).pow(2) *
          Poly(k5, {1, 1, 1}).pow(2);  // x^2 + x + 1
  } else if (t.entries == std::vector<int>{3, 3, 2, 2}) {
    den = Poly::x(k5).pow(3) * Poly::linear_root(k5, 1).pow(3) *
          Poly(k5, {2, 4, 1}).pow(2);  // x^2 + 4x + 2
  } else {
    return std::nullopt;
  }
  auto w = witness_from_density(t.entries, RatFunc(Poly::constant(k5, 1), den));
  if (w) return FamilyHit{*w, "family:p=5-special"};
  return std::nullopt;
}

std::optional<FamilyHit> try_families(const FormType& t) {
  if (auto w = family_half(t)) return w;
  if (auto w = family_pminus1(t)) return w;
  if (auto w = family_roots_of_unity(t)) return w;
  if (auto w = family_p5_special(t)) return w;
  return std::nullopt;
}

// ---- Groebner generators ----

// Coefficients a_j of prod (x - P_i)^{p - h_i} with P_1 = 0, P_2 = 1 and
// P_3..P_n the variables 0..n-3; variable n-2 is the saturation variable s.
// Returns the a_j with j == -1 mod p plus the distinctness saturation.
std::vector<MPoly> groebner_generators(const FormType& t) {
  const uint32_t p = t.p;
  const int n = (int)t.entries.size();
  const int nfree = std::max(n - 2, 0);
  const int nv = nfree + 1;
  auto b = pascal((int)p, p);

  std::vector<MPoly> coef = {MPoly::constant(p, nv, 1)};
  for (int i = 0; i < n; ++i) {
    int e = (int)p - t.entries[i];
    std::vector<MPoly> fac(e + 1, MPoly(p, nv));
    if (i == 0) {
      fac[e] = MPoly::constant(p, nv, 1);  // (x - 0)^e
    } else {
      for (int k = 0; k <= e; ++k) {
        long long sign = (k % 2 == 0) ? 1 : -1;
        MPoly c = MPoly::constant(p, nv, sign * (long long)b[e][k]);
        if (i >= 2) {
          MPoly v = MPoly::variable(p, nv, i - 2);
          for (int rep = 0; rep < k; ++rep) c = c * v;
        }
        fac[e - k] = c;  // for i == 1, P_2 = 1 and the power is absorbed
      }
    }
    std::vector<MPoly> next(coef.size() + fac.size() - 1, MPoly(p, nv));
    for (size_t a = 0; a < coef.size(); ++a) {
      if (coef[a].is_zero()) continue;
      for (size_t c = 0; c < fac.size(); ++c) {
        if (fac[c].is_zero()) continue;
        next[a + c] = next[a + c] + coef[a] * fac[c];
      }
    }
    coef = std::move(next);
  }

  std::vector<MPoly> gens;
  for (size_t j = p - 1; j < coef.size(); j += p)
    if (!coef[j].is_zero()) gens.push_back(coef[j]);

  MPoly D = MPoly::constant(p, nv, 1);
  for (int i = 0; i < nfree; ++i) {
    MPoly Pi = MPoly::variable(p, nv, i);
    for (int j = i + 1; j < nfree; ++j)
      D = D * (Pi - MPoly::variable(p, nv, j));
    D = D * Pi * (Pi - MPoly::constant(p, nv, 1));
  }
  gens.push_back(MPoly::constant(p, nv, 1) -
                 MPoly::variable(p, nv, nfree) * D);
  return gens;
}

// ---- witness lifting back to the original entries ----

// Reattach the p-th-power factors the normalization stripped: entries with
// residue r > 0 reuse the normalized witness pole of a slot with entry r
// (the extra (x-P)^{pk} is a p-th power); entries divisible by p get fresh
// poles.  Returns nothing when the normalized witness has no explicit pole
// list or no field with enough room fits the registry cap.
std::optional<FormWitness> lift_witness(const std::vector<int>& original,
                                        const FormType& normalized,
                                        const FormWitness& w) {
  if (original == normalized.entries) return w;
  const uint32_t p = normalized.p;
  if (!normalized.entries.empty() && w.poles.empty()) return std::nullopt;

  const Fq* K = w.field;
  size_t needed = original.size();
  long long m = K->m();
  while ((uint64_t)K->q() < needed + 2) {
    ++m;
    if (!field_fits(p, m)) return std::nullopt;
    if (m % w.field->m() != 0) continue;  // canonical embeddings need m | m'
    K = &Fq::get(p, (uint32_t)m);
  }

  std::vector<FqEl> poles(original.size());
  std::set<FqEl> used;
  std::vector<bool> slot_taken(normalized.entries.size(), false);
  for (size_t i = 0; i < original.size(); ++i) {
    int r = original[i] % (int)p;
    if (r == 0) continue;
    for (size_t s = 0;; ++s) {
      if (s == normalized.entries.size())
        throw std::logic_error("lift_witness: residue multisets disagree");
      if (!slot_taken[s] && normalized.entries[s] == r) {
        slot_taken[s] = true;
        poles[i] = embed_el(*w.field, w.poles[s], *K);
        used.insert(poles[i]);
        break;
      }
    }
  }
  FqEl fresh = 0;
  for (size_t i = 0; i < original.size(); ++i) {
    if (original[i] % (int)p != 0) continue;
    while (used.count(fresh)) ++fresh;
    poles[i] = fresh;
    used.insert(fresh);
  }

  FormWitness lifted{K, poles, form_from_poles(*K, original, poles)};
  if (!is_exact(lifted.omega).exact)
    throw std::logic_error("lift_witness: lifted form lost exactness");
  return lifted;
}

std::string sum_note(const FormType& n0) {
  int sum = 0;
  for (int h : n0.entries) sum += h;
  std::ostringstream os;
  os << "sum of reduced pole orders " << sum << " is below p + n = "
     << n0.p + n0.entries.size()
     << "; some residue is forced to be nonzero (residue obstruction)";
  return os.str();
}

}  // namespace

FormType make_form_type(uint32_t p, std::vector<int> entries) {
  validate_entries(p, entries);
  if (entries.empty())
    throw std::invalid_argument("form type: entry list is empty");
  std::sort(entries.begin(), entries.end(), std::greater<int>());
  return FormType{p, std::move(entries)};
}

std::string format_type(const std::vector<int>& entries) {
  std::string out = "{";
  for (size_t i = 0; i < entries.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(entries[i]);
  }
  return out + "}";
}

FormType normalize_type(const FormType& t) {
  validate_entries(t.p, t.entries);
  FormType r{t.p, {}};
  for (int h : t.entries) {
    int res = h % (int)t.p;
    if (res != 0) r.entries.push_back(res);
  }
  std::sort(r.entries.begin(), r.entries.end(), std::greater<int>());
  return r;
}

bool groebner_unit_test(const FormType& t, uint64_t pair_cap) {
  FormType n0 = normalize_type(t);
  if (n0.entries.empty()) return true;  // no coefficient constraints at all
  auto basis = groebner_basis(groebner_generators(n0), pair_cap);
  return !is_unit_ideal(basis);
}

std::optional<FormWitness> brute_force_witness(const FormType& t, int m_max) {
  FormType n0 = normalize_type(t);
  const uint32_t p = n0.p;
  const int n = (int)n0.entries.size();
  if (n == 0) {
    const Fq& K = Fq::get(p, 1);
    return FormWitness{&K, {}, RatFunc::constant(K, 1)};
  }
  if (n == 1) {
    const Fq& K = Fq::get(p, 1);
    return FormWitness{&K,
                       {K.zero()},
                       form_from_poles(K, n0.entries, {K.zero()})};
  }
  for (int m = 1; m <= m_max && field_fits(p, m); ++m) {
    const Fq& K = Fq::get(p, m);
    if ((long long)K.q() - 2 < n - 2) continue;  // not enough room
    std::vector<FqEl> poles(n);
    poles[0] = K.zero();
    poles[1] = K.one();

    // proper-subfield membership: those tuples were searched at smaller m
    std::vector<uint32_t> proper;
    for (uint32_t d = 1; d < K.m(); ++d)
      if (K.m() % d == 0) proper.push_back(d);
    auto in_subfield = [&](FqEl v, uint32_t d) {
      long long qd = 1;
      for (uint32_t i = 0; i < d; ++i) qd *= p;
      return K.pow(v, qd) == v;
    };

    std::optional<FormWitness> found;
    auto rec = [&](auto&& self, int i) -> bool {
      if (i == n) {
        for (uint32_t d : proper) {
          bool all = true;
          for (int j = 2; j < n && all; ++j) all = in_subfield(poles[j], d);
          if (all) return false;
        }
        RatFunc omega = form_from_poles(K, n0.entries, poles);
        if (!is_exact(omega).exact) return false;
        found = FormWitness{&K, poles, omega};
        return true;
      }
      FqEl lo = (n0.entries[i] == n0.entries[i - 1] && i > 2)
                    ? (FqEl)(poles[i - 1] + 1)
                    : (FqEl)2;
      for (FqEl v = lo; v < K.q(); ++v) {
        bool clash = false;
        for (int j = 2; j < i && !clash; ++j) clash = poles[j] == v;
        if (clash) continue;
        poles[i] = v;
        if (self(self, i + 1)) return true;
      }
      return false;
    };
    if (n == 2) {
      RatFunc omega = form_from_poles(K, n0.entries, poles);
      if (is_exact(omega).exact) return FormWitness{&K, poles, omega};
      return std::nullopt;  // (0,1) is the only placement up to affine maps
    }
    if (rec(rec, 2)) return found;
  }
  return std::nullopt;
}

FormDecision exact_form_exists(const FormType& t, const FormConfig& cfg) {
  validate_entries(t.p, t.entries);
  using Key = std::tuple<uint32_t, int, uint64_t, std::vector<int>>;
  static std::map<Key, FormDecision> memo;
  Key key{t.p, cfg.m_max, cfg.pair_cap, t.entries};
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  const uint32_t p = t.p;
  FormType n0 = normalize_type(t);
  const int n = (int)n0.entries.size();

  FormDecision d;
  std::optional<FormWitness> normalized_witness;
  if (n == 0) {
    d.verdict = Verdict::yes;
    d.method = "trivial";
    d.note = "every pole order is divisible by p: a p-th-power multiple of dx";
    const Fq& K = Fq::get(p, 1);
    normalized_witness = FormWitness{&K, {}, RatFunc::constant(K, 1)};
  } else if (n == 1) {
    d.verdict = Verdict::yes;
    d.method = "single";
    d.note = "single pole of order " + std::to_string(n0.entries[0]) +
             ": (x-P)^(1-h)/(1-h) integrates it";
    const Fq& K = Fq::get(p, 1);
    normalized_witness =
        FormWitness{&K, {K.zero()}, form_from_poles(K, n0.entries, {K.zero()})};
  } else {
    int sum = 0;
    for (int h : n0.entries) sum += h;
    if (sum < (int)p + n) {
      d.verdict = Verdict::no;
      d.method = "bound";
      d.note = sum_note(n0);
    } else if (n == 2) {
      d.verdict = Verdict::yes;
      d.method = "pair-law";
      d.note = "two poles with reduced orders summing to " +
               std::to_string(sum) + " >= p + 2";
      normalized_witness = brute_force_witness(n0, 1);
      if (!normalized_witness)
        throw std::logic_error(
            "exact_form_exists: the two-pole law has no witness at (0,1)");
    } else if (auto fam = try_families(n0)) {
      d.verdict = Verdict::yes;
      d.method = fam->name;
      d.note = "closed-form witness";
      normalized_witness = fam->witness;
    } else {
      try {
        bool exists = groebner_unit_test(n0, cfg.pair_cap);
        d.method = "groebner";
        if (!exists) {
          d.verdict = Verdict::no;
          d.note = "unit ideal: no pole placement over the algebraic closure";
        } else {
          d.verdict = Verdict::yes;
          normalized_witness = brute_force_witness(n0, cfg.m_max);
          d.note = normalized_witness
                       ? "ideal is proper; witness found by search"
                       : "ideal is proper; no witness within F_{p^m}, m <= " +
                             std::to_string(cfg.m_max);
        }
      } catch (const EffortCap& cap) {
        normalized_witness = brute_force_witness(n0, cfg.m_max);
        if (normalized_witness) {
          d.verdict = Verdict::yes;
          d.method = "brute-force";
          d.note = std::string(cap.what()) + "; witness found by search";
        } else {
          d.verdict = Verdict::undecided;
          d.method = "capped";
          d.note = std::string(cap.what()) +
                   "; brute force found no witness either";
        }
      }
    }
  }

  if (d.verdict == Verdict::yes && normalized_witness) {
    d.witness = lift_witness(t.entries, n0, *normalized_witness);
    if (!d.witness && d.note.find("no witness") == std::string::npos)
      d.note += "; witness not liftable to the unreduced orders within the "
                "field registry cap";
  }
  memo.emplace(key, d);
  return d;
}

std::vector<std::vector<std::vector<int>>> multiset_partitions(
    std::vector<int> elems) {
  std::sort(elems.begin(), elems.end(), std::greater<int>());
  // elements join blocks in scan order; placing into two blocks of equal
  // content leads to the same completions, so such placements are pruned,
  // and the canonical set catches the leftover block-order duplicates
  std::set<std::vector<std::vector<int>>> seen;
  std::vector<std::vector<int>> blocks;
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == elems.size()) {
      auto canon = blocks;
      std::sort(canon.begin(), canon.end(),
                [](const std::vector<int>& a, const std::vector<int>& b) {
                  return a > b;
                });
      seen.insert(std::move(canon));
      return;
    }
    std::set<std::vector<int>> tried;
    size_t nb = blocks.size();  // recursion grows the vector; index, don't ref
    for (size_t bi = 0; bi < nb; ++bi) {
      if (!tried.insert(blocks[bi]).second) continue;
      blocks[bi].push_back(elems[i]);
      self(self, i + 1);
      blocks[bi].pop_back();
    }
    blocks.push_back({elems[i]});
    self(self, i + 1);
    blocks.pop_back();
  };
  rec(rec, 0);
  std::vector<std::vector<std::vector<int>>> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

namespace {

struct RawStep {
  int part;
  std::vector<int> split;
  FormDecision form;
};

struct RawChain {
  std::optional<std::vector<RawStep>> steps;
  bool certain = true;  // meaningful only when steps is empty
};

// chain from {sum(block)} down to the individual entries of `block`
const RawChain& chain_to(uint32_t p, const std::vector<int>& block,
                         const FormConfig& cfg) {
  using Key = std::tuple<uint32_t, int, uint64_t, std::vector<int>>;
  static std::map<Key, RawChain> memo;
  Key key{p, cfg.m_max, cfg.pair_cap, block};
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  RawChain result;
  if (block.size() == 1) {
    result.steps = std::vector<RawStep>{};
  } else {
    for (const auto& parts : multiset_partitions(block)) {
      if (parts.size() < 2) continue;
      std::vector<int> sums;
      bool valid = true;
      for (const auto& b : parts) {
        int s = std::accumulate(b.begin(), b.end(), 0);
        if (s % (int)p == 1) valid = false;
        sums.push_back(s);
      }
      if (!valid) continue;
      std::sort(sums.begin(), sums.end(), std::greater<int>());
      FormDecision dec = exact_form_exists(FormType{p, sums}, cfg);
      if (dec.verdict == Verdict::undecided) result.certain = false;
      if (dec.verdict != Verdict::yes) continue;
      std::vector<RawStep> steps{{std::accumulate(block.begin(), block.end(), 0),
                                  sums, dec}};
      bool ok = true;
      for (const auto& b : parts) {
        const RawChain& sub = chain_to(p, b, cfg);
        if (!sub.steps) {
          ok = false;
          if (!sub.certain) result.certain = false;
          break;
        }
        steps.insert(steps.end(), sub.steps->begin(), sub.steps->end());
      }
      if (ok) {
        result.steps = std::move(steps);
        break;
      }
    }
  }
  return memo.emplace(std::move(key), std::move(result)).first->second;
}

}  // namespace

ChainProbe chain_probe(int h, const FormType& target, const FormConfig& cfg) {
  validate_entries(target.p, target.entries);
  if (target.entries.empty())
    throw std::invalid_argument("chain_exists: empty target type");
  int sum = std::accumulate(target.entries.begin(), target.entries.end(), 0);
  if (sum != h)
    throw std::invalid_argument("chain_exists: target entries sum to " +
                                std::to_string(sum) + ", not " +
                                std::to_string(h));
  if (h % (int)target.p == 1)
    throw std::invalid_argument("chain_exists: h is 1 mod p");

  std::vector<int> entries = target.entries;
  std::sort(entries.begin(), entries.end(), std::greater<int>());
  const RawChain& raw = chain_to(target.p, entries, cfg);
  if (!raw.steps) return ChainProbe{std::nullopt, raw.certain};

  // replay to attach the full partition each step starts from
  ChainWitness w;
  std::vector<int> cur{h};
  for (const RawStep& r : *raw.steps) {
    ChainStep step{cur, r.part, r.split, r.form};
    auto it = std::find(cur.begin(), cur.end(), r.part);
    cur.erase(it);
    cur.insert(cur.end(), r.split.begin(), r.split.end());
    std::sort(cur.begin(), cur.end(), std::greater<int>());
    w.steps.push_back(std::move(step));
  }
  return ChainProbe{std::move(w), true};
}

std::optional<ChainWitness> chain_exists(int h, const FormType& target,
                                         const FormConfig& cfg) {
  return chain_probe(h, target, cfg).witness;
}

}  // namespace hurwitz
