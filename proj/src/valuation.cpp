#include "hurwitz/valuation.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hurwitz {

namespace {

int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

// nu of a bivariate polynomial whose X-coefficients are already relative to
// the center (i.e. after the X -> X + z shift), in t-units at ramification R
Rat poly_gauss(const BivPoly& G, const Rat& s, int R) {
  if (G.is_zero()) throw std::domain_error("gauss valuation of zero");
  bool first = true;
  Rat best;
  for (int i = 0; i <= G.deg_x(); ++i) {
    const Poly& c = G.coeff(i);
    if (c.is_zero()) continue;
    Rat v = Rat(c.ord0(), R) + s * Rat(i);
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

}  // namespace

Rat ord_t(const Poly& z, int ram) {
  if (z.is_zero()) throw std::domain_error("ord_t of zero");
  return Rat(z.ord0(), ram);
}

Rat gauss_valuation(const BivRat& F, const Place& pl) {
  if (F.is_zero()) throw std::domain_error("gauss valuation of zero");
  int R = lcm_int(F.ram(), pl.zram);
  BivRat G = F.with_ram(R);
  Poly z = pl.z.inflate(R / pl.zram);
  return poly_gauss(G.num().subst_x_plus(z), pl.s, R) -
         poly_gauss(G.den().subst_x_plus(z), pl.s, R);
}

PlaceValue reduce_at_place(const BivRat& F, const Place& pl) {
  if (F.is_zero()) throw std::domain_error("reduction of zero");
  if (pl.s < Rat(0))
    throw std::invalid_argument("reduce_at_place: radius parameter must be >= 0");
  int R = lcm_int(lcm_int(F.ram(), pl.zram), (int)pl.s.den());
  BivRat G = F.with_ram(R);
  Poly z = pl.z.inflate(R / pl.zram);
  long long sR = (pl.s * Rat(R)).as_integer();
  const Fq& k = F.field();
  Poly ts = Poly::x(k).pow((long long)sR);

  auto reduce_poly = [&](const BivPoly& P, int& ord_out) {
    BivPoly shifted = P.subst_x_plus(z).scale_x(ts);
    ord_out = shifted.ord_tau();
    return shifted.shift_tau_down(ord_out).at_tau_zero();
  };
  int on = 0, od = 0;
  Poly nbar = reduce_poly(G.num(), on);
  Poly dbar = reduce_poly(G.den(), od);
  return PlaceValue{Rat(on - od, R), RatFunc(std::move(nbar), std::move(dbar))};
}

std::vector<std::pair<int, int>> newton_lower_hull(const BivPoly& P) {
  std::vector<std::pair<int, int>> pts;
  for (int i = 0; i <= P.deg_x(); ++i)
    if (!P.coeff(i).is_zero()) pts.push_back({i, P.coeff(i).ord0()});
  std::vector<std::pair<int, int>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // drop b unless it lies strictly below the segment a -> pt
      long long lhs = (long long)(b.second - a.second) * (pt.first - a.first);
      long long rhs = (long long)(pt.second - a.second) * (b.first - a.first);
      if (lhs >= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  return hull;
}

// ---------------------------------------------------------------------------
// restricted Newton-Puiseux

namespace {

struct NeedRam {
  int factor;
};

struct NpSearch {
  const Fq& k;
  int exp_cap;            // digits of a polynomial root cannot exceed this
  long long node_budget;  // guards against combinatorial blowup
  std::vector<Poly> found;

  // collect tau-polynomial roots of P of the form prefix + digits with every
  // digit exponent strictly above min_exp
  void collect(const BivPoly& P, int min_exp, const Poly& prefix) {
    if (--node_budget < 0)
      throw std::logic_error("newton-puiseux: search budget exceeded");
    if (P.deg_x() <= 0) return;
    if (P.coeff(0).is_zero()) found.push_back(prefix);

    std::vector<std::pair<int, int>> hull = newton_lower_hull(P);
    for (size_t e = 0; e + 1 < hull.size(); ++e) {
      auto [i0, o0] = hull[e];
      auto [i1, o1] = hull[e + 1];
      if (o1 > o0) continue;  // positive slope: digits outside the closed disc
      int rise = o0 - o1, run = i1 - i0;
      if (rise % run != 0) throw NeedRam{run / std::gcd(rise % run, run)};
      int exp = rise / run;
      if (exp <= min_exp) continue;
      if (exp > exp_cap) continue;  // cannot belong to a polynomial root
      // edge polynomial in the digit residue y
      std::vector<FqEl> phi((size_t)run + 1, FqEl(0));
      for (int i = i0; i <= i1; ++i) {
        int line = o0 - (i - i0) * exp;
        phi[(size_t)(i - i0)] = P.coeff(i).coeff(line);
      }
      Poly edge(k, std::move(phi));
      for (const auto& [y, mult] : edge.roots()) {
        (void)mult;
        if (y == 0) continue;
        Poly digit = Poly::x(k).pow(exp).scaled(y);
        collect(P.subst_x_plus(digit), exp, prefix + digit);
      }
    }
  }
};

}  // namespace

PuiseuxRoots polynomial_roots_in_disc(const BivPoly& D, int ram) {
  if (D.is_zero()) throw std::invalid_argument("roots of the zero polynomial");
  const Fq& k = D.field();
  int R = ram;
  for (int attempt = 0; attempt < 24; ++attempt) {
    if (R > 1000000) break;
    BivPoly Dw = D.inflate_tau(R / ram);
    // digit exponents of polynomial roots are bounded by deg_tau of the
    // constant coefficient once X-powers are stripped, hence by deg_tau(Dw)
    NpSearch search{k, Dw.deg_tau(), 200000, {}};
    try {
      search.collect(Dw, -1, Poly(k));
    } catch (const NeedRam& nr) {
      R *= nr.factor;
      continue;
    }
    // dedupe (each root has one digit path, but stay defensive)
    std::vector<Poly> vals;
    for (const Poly& z : search.found)
      if (std::find(vals.begin(), vals.end(), z) == vals.end()) vals.push_back(z);

    PuiseuxRoots out;
    out.ram = R;
    BivPoly work = Dw;
    int total = 0;
    for (const Poly& z : vals) {
      int m = 0;
      while (work.deg_x() > 0 && work.eval_x(z).is_zero()) {
        work = work.synthetic_quotient(z);
        ++m;
      }
      if (m > 0) out.roots.push_back({z, m});
      total += m;
    }
    out.cofactor = work;
    out.complete = (total == Dw.deg_x());
    return out;
  }
  throw std::logic_error("newton-puiseux: ramification did not stabilize");
}

}  // namespace hurwitz
