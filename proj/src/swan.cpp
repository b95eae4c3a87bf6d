#include "hurwitz/swan.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "hurwitz/algebra.hpp"

namespace hurwitz {

namespace {

int lcm_int(int a, int b) { return (int)std::lcm((long long)a, (long long)b); }

BivPoly biv_one(const Fq& k) {
  return BivPoly::constant(k, Poly::constant(k, 1));
}

// X - z as a BivRat at ramification `ram`
BivRat linear_factor(const Fq& k, const Poly& z, int ram) {
  return BivRat(BivPoly::X(k) - BivPoly::constant(k, z), biv_one(k), ram);
}

// multiplicity of (X - z) in the denominator of G (z at G's ramification)
int pole_multiplicity(const BivRat& G, const Poly& z) {
  BivPoly d = G.den();
  int e = 0;
  while (d.deg_x() > 0 && d.eval_x(z).is_zero()) {
    d = d.synthetic_quotient(z);
    ++e;
  }
  return e;
}

bool supported_on_p_multiples(const Poly& f, int p) {
  for (int i = 0; i <= f.deg(); ++i)
    if (f.coeff(i) != 0 && i % p != 0) return false;
  return true;
}

// termwise p-th root of a tau-polynomial whose support lies in p*Z
Poly poly_pth_root(const Poly& f, int p) {
  if (f.is_zero()) return f;
  const Fq& k = f.field();
  std::vector<FqEl> out((size_t)(f.deg() / p) + 1, FqEl(0));
  for (int i = 0; i <= f.deg(); i += p)
    out[(size_t)(i / p)] = k.pth_root(f.coeff(i));
  return Poly(k, std::move(out));
}

// Generic-fiber conductor at the branch point z (multiplicity `mult` in the
// denominator of F): over the perfect closure of F_q((t)) the pole order at
// z drops below every multiple of p by subtracting w^p - w with
// w = lc^{1/p}/(X - z)^{e/p}, where lc is the leading coefficient of the
// pole; the conductor is the final order plus one.  A return of zero means
// the pole was an Artin-Schreier artifact and z is not a branch point.
int generic_conductor(const Fq& k, const BivRat& F, const Poly& z0, int mult) {
  const int p = (int)k.p();
  int e = mult;
  BivRat cur = F;
  Poly z = z0;
  int ram = cur.ram();
  while (e > 0 && e % p == 0) {
    // BivRat arithmetic deflates results to the coarsest tau-lattice they fit
    // in; re-inflate to the working ram so z stays in matching coordinates.
    BivRat G = (cur * linear_factor(k, z, ram).pow(e)).with_ram(ram);
    RatFunc lc(G.num().eval_x(z), G.den().eval_x(z));  // in tau, nonzero
    if (!supported_on_p_multiples(lc.num(), p) ||
        !supported_on_p_multiples(lc.den(), p)) {
      // pass to tau^{1/p}: every exponent becomes a multiple of p
      ram *= p;
      cur = cur.with_ram(ram);
      z = z.inflate(p);
      continue;
    }
    RatFunc root(poly_pth_root(lc.num(), p), poly_pth_root(lc.den(), p));
    BivRat w = BivRat(BivPoly::constant(k, root.num()),
                      BivPoly::constant(k, root.den()), ram) /
               linear_factor(k, z, ram).pow(e / p);
    cur = cur - w.artin_schreier_image();
    int enew = pole_multiplicity(cur.with_ram(ram), z);
    if (enew >= e)
      throw std::logic_error("generic conductor: pole order did not descend");
    e = enew;
  }
  return e == 0 ? 0 : e + 1;
}

// lift of g in F_q(x) to the place (s, z): A(X, tau) = tau^e * g((X-z)/tau^m)
// with m = s*R, so that A(z + tau^m x, tau) == tau^e g(x) identically
BivRat lift_at_place(const RatFunc& g, const Poly& z, long long m, long long e,
                     int R) {
  const Fq& k = g.field();
  BivPoly xz = BivPoly::X(k) - BivPoly::constant(k, z);
  auto homogenize = [&](const Poly& u) {
    // tau^{m*deg(u)} * u((X-z)/tau^m), a polynomial in X and tau
    int d = u.deg();
    BivPoly out(k);
    for (int i = d; i >= 0; --i) {
      Poly c = Poly::x(k).pow(m * (long long)(d - i)).scaled(u.coeff(i));
      out = out * xz + BivPoly::constant(k, c);
    }
    return out;
  };
  BivPoly nn = homogenize(g.num());
  BivPoly dd = homogenize(g.den());
  long long E = e + m * (long long)(g.den().deg() - g.num().deg());
  if (E >= 0)
    return BivRat(nn.scaled(Poly::x(k).pow(E)), dd, R);
  return BivRat(nn, dd.scaled(Poly::x(k).pow(-E)), R);
}

}  // namespace

Cover::Cover(const Fq& k, BivRat F) : k_(&k), F_(std::move(F)) {
  if (!F_.is_zero() && F_.num().deg_x() >= F_.den().deg_x())
    throw std::invalid_argument("cover: F must vanish at X = infinity");
  ram_ = F_.ram();
  if (F_.is_zero()) return;
  PuiseuxRoots pr = polynomial_roots_in_disc(F_.den(), F_.ram());
  if (!pr.complete)
    throw std::invalid_argument(
        "cover: branch locus does not lie in the closed unit disc (the "
        "denominator has roots with no tau-polynomial expansion)");
  ram_ = pr.ram;
  BivRat Fr = F_.with_ram(ram_);
  for (const auto& [z, m] : pr.roots) {
    int h = generic_conductor(k, Fr, z, m);
    if (h > 0) locus_.push_back(BranchPoint{z, m, h});
  }
  std::sort(locus_.begin(), locus_.end(),
            [](const BranchPoint& a, const BranchPoint& b) {
              return poly_less(a.z, b.z);
            });
}

Cover Cover::parse(const std::string& text) {
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (i >= text.size() || text[i] != c)
      throw std::invalid_argument("cover format: p=<prime>; F=<expr>");
    ++i;
  };
  expect('p');
  expect('=');
  skip_ws();
  long long p = 0;
  size_t digits = 0;
  while (i < text.size() && std::isdigit((unsigned char)text[i])) {
    p = p * 10 + (text[i] - '0');
    if (p > 1 << 22)
      throw std::invalid_argument("cover: characteristic out of range");
    ++i;
    ++digits;
  }
  if (digits == 0)
    throw std::invalid_argument("cover format: p=<prime>; F=<expr>");
  expect(';');
  expect('F');
  expect('=');
  const Fq& k = Fq::get((uint32_t)p, 1);
  return Cover(k, eval_bivariate(text.substr(i), k));
}

int Cover::conductor_sum() const {
  int s = 0;
  for (const auto& bp : locus_) s += bp.conductor;
  return s;
}

ReducedAt make_reduced_at(const Cover& c, const Place& pl) {
  const Fq& k = c.field();
  const int p = (int)k.p();
  BivRat cur = c.F();
  BivRat wit = BivRat::zero(k);
  int steps = 0;

  ReducedAt out{cur, wit, false, Rat(0), RatFunc::zero(k), 0};
  if (!cur.is_zero()) {
    // pathological-input guard, from the initial data only
    int R0 = lcm_int(lcm_int(cur.ram(), pl.zram), (int)pl.s.den());
    Rat nu0 = gauss_valuation(cur, pl);
    Rat mag = nu0 < Rat(0) ? -nu0 : nu0;
    long long cap = (long long)p * (R0 * mag.ceil() + 16);
    int promotions = 0;

    while (!cur.is_zero()) {
      PlaceValue pv = reduce_at_place(cur, pl);
      BivRat w = BivRat::zero(k);
      if (pv.nu < Rat(0)) {
        RatFunc g;
        if (!pv.reduction.pth_power_root(g)) {
          out = ReducedAt{cur, wit, false, pv.nu, pv.reduction, steps};
          break;
        }
        // kill the leading term with the lift of g at depth nu/p
        int R = lcm_int(lcm_int(cur.ram(), pl.zram), (int)pl.s.den());
        long long nuR = (pv.nu * Rat(R)).as_integer();
        if (nuR % p != 0) {
          // the leading exponent sits outside p times the value group; pass
          // to tau^{1/p}.  A class whose restriction to the subdisc is a
          // nontrivial constant class demands this forever (nu creeps up to 0
          // along -c/p^k without reaching it) and has no reduced form over
          // any tame extension, so give up after a generous budget.
          if (++promotions > 6)
            throw std::domain_error(
                "make_reduced_at: no reduced form within the ramification "
                "budget; the cover restricted to this subdisc degenerates to "
                "a constant-field extension (defect)");
          R *= p;
          nuR *= p;
        }
        Poly z = pl.z.inflate(R / pl.zram);
        w = lift_at_place(g, z, (pl.s * Rat(R)).as_integer(), nuR / p, R);
      } else if (pv.nu > Rat(0)) {
        out = ReducedAt{cur, wit, false, pv.nu, RatFunc::zero(k), steps};
        break;
      } else {
        ReduceResult rr = as_reduce(pv.reduction);
        if (rr.witness.is_zero()) {
          out = ReducedAt{cur, wit, false, pv.nu, pv.reduction, steps};
          break;
        }
        // pull the residue-level witness back up to the place
        int R = lcm_int(lcm_int(cur.ram(), pl.zram), (int)pl.s.den());
        Poly z = pl.z.inflate(R / pl.zram);
        w = lift_at_place(rr.witness, z, (pl.s * Rat(R)).as_integer(), 0, R);
      }
      if (!w.is_zero()) {
        cur = cur - w.artin_schreier_image();
        wit = wit - w;
        if (++steps > cap)
          throw std::runtime_error("make_reduced_at: iteration cap exceeded");
      }
    }
    if (cur.is_zero())
      out = ReducedAt{cur, wit, true, Rat(0), RatFunc::zero(k), steps};
  } else {
    out.split = true;
  }

  if (out.fstar != c.F() + out.witness.artin_schreier_image())
    throw std::logic_error("make_reduced_at: witness identity violated");
  return out;
}

DegenerationType degeneration_type(const Cover& c, const Place& pl) {
  const Fq& k = c.field();
  ReducedAt r = make_reduced_at(c, pl);
  DegenerationType out{false, Rat(0), RatFunc::zero(k), RatFunc::zero(k), 0};
  if (!r.split && r.nu < Rat(0)) {
    out.radical = true;
    out.delta = -r.nu / Rat((long long)k.p());
    RatFunc om = r.reduction.derivative();
    if (om.is_zero())
      throw std::logic_error("degeneration_type: reduced class has zero differential");
    out.omega = fpx_normalize(om);
  } else {
    out.reduction = fpx_normalize(r.reduction);
    std::vector<int> datum = branching_datum(out.reduction);
    out.jump = datum.empty() ? 0 : datum.front() - 1;
  }
  return out;
}

int boundary_swan(const Cover& c, const Place& pl, const Direction& dir) {
  DegenerationType d = degeneration_type(c, pl);
  if (d.radical) {
    int ord = dir.infinite ? d.omega.ord_at_infinity() - 2
                           : d.omega.ord_at(dir.value);
    return -ord - 1;
  }
  if (d.reduction.is_zero()) return 0;
  int ord = dir.infinite ? d.reduction.ord_at_infinity()
                         : d.reduction.ord_at(dir.value);
  return ord < 0 ? -ord : 0;
}

namespace {

// breakpoint radii of the Gauss-valuation envelope of G around z in (a, b):
// the radii where the minimizing monomial of the shifted numerator or
// denominator switches, i.e. the slopes of their Newton hull edges
std::vector<Rat> envelope_breakpoints(const BivRat& G, const Poly& z, int zram,
                                      const Rat& a, const Rat& b) {
  int R = lcm_int(G.ram(), zram);
  BivRat Gr = G.with_ram(R);
  Poly zr = z.inflate(R / zram);
  std::vector<Rat> out;
  for (const BivPoly* P : {&Gr.num(), &Gr.den()}) {
    auto hull = newton_lower_hull(P->subst_x_plus(zr));
    for (size_t e = 0; e + 1 < hull.size(); ++e) {
      Rat s(hull[e].second - hull[e + 1].second,
            (long long)R * (hull[e + 1].first - hull[e].first));
      if (a < s && s < b) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// nu_{s,z}(G) as an affine function of s, valid on a cell that contains
// `mid` and no envelope breakpoints
struct AffineNu {
  Rat slope, icept;
  Rat at(const Rat& s) const { return slope * s + icept; }
};
AffineNu cell_nu(const BivRat& G, const Poly& z, int zram, const Rat& mid) {
  int R = lcm_int(G.ram(), zram);
  BivRat Gr = G.with_ram(R);
  Poly zr = z.inflate(R / zram);
  long long in = 0, id = 0;
  Rat on(0), od(0);
  for (int which = 0; which < 2; ++which) {
    const BivPoly& P = which == 0 ? Gr.num() : Gr.den();
    BivPoly sh = P.subst_x_plus(zr);
    bool first = true;
    long long bi = 0;
    Rat bo(0);
    for (int i = 0; i <= sh.deg_x(); ++i) {
      if (sh.coeff(i).is_zero()) continue;
      Rat val = Rat(sh.coeff(i).ord0(), R) + Rat(i) * mid;
      if (first || val < Rat(bi) * mid + bo) {
        bi = i;
        bo = Rat(sh.coeff(i).ord0(), R);
        first = false;
      }
    }
    if (which == 0) {
      in = bi;
      on = bo;
    } else {
      id = bi;
      od = bo;
    }
  }
  return AffineNu{Rat(in - id), on - od};
}

}  // namespace

std::vector<ProfileSegment> depth_profile(const Cover& c, const Poly& z,
                                          int zram, const Rat& s_max) {
  const Fq& k = c.field();
  if (s_max < Rat(0))
    throw std::invalid_argument("depth_profile: s_max must be >= 0");

  auto point_row = [&](const Rat& s) {
    DegenerationType d = degeneration_type(c, Place{s, z, zram});
    ProfileSegment seg;
    seg.from = seg.to = s;
    seg.slope = Rat(0);
    seg.etale = !d.radical;
    seg.intercept = d.delta;
    seg.omega = d.omega;
    seg.reduction = d.reduction;
    return seg;
  };
  if (s_max == Rat(0)) return {point_row(Rat(0))};

  // segment rows from the refinement, before kink insertion
  std::vector<ProfileSegment> rows;
  std::function<void(const Rat&, const Rat&, int)> refine =
      [&](const Rat& a, const Rat& b, int depth) {
        if (depth > 32)
          throw std::logic_error("depth_profile: refinement did not stabilize");
        Rat mid = (a + b) / Rat(2);
        ReducedAt r = make_reduced_at(c, Place{mid, z, zram});
        ProfileSegment seg;
        seg.from = a;
        seg.to = b;
        if (r.split) {  // the class is trivial: depth zero everywhere
          seg.etale = true;
          seg.slope = seg.intercept = Rat(0);
          seg.omega = seg.reduction = RatFunc::zero(k);
          rows.push_back(seg);
          return;
        }
        std::vector<Rat> bps = envelope_breakpoints(r.fstar, z, zram, a, b);
        if (!bps.empty()) {  // the reduced form is not monomial on all of (a,b)
          Rat prev = a;
          for (const Rat& s : bps) {
            refine(prev, s, depth + 1);
            prev = s;
          }
          refine(prev, b, depth + 1);
          return;
        }
        // on a breakpoint-free cell the reduction of fstar is one fixed
        // monomial ratio, so reducedness at mid extends to the whole cell
        // and nu is affine in s
        AffineNu nu = cell_nu(r.fstar, z, zram, mid);
        Rat va = nu.at(a), vb = nu.at(b);
        if ((va < Rat(0) && vb > Rat(0)) || (va > Rat(0) && vb < Rat(0))) {
          Rat root = -nu.icept / nu.slope;  // sign change: split at nu = 0
          refine(a, root, depth + 1);
          refine(root, b, depth + 1);
          return;
        }
        if (va >= Rat(0) && vb >= Rat(0)) {
          seg.etale = true;
          seg.slope = seg.intercept = Rat(0);
          seg.omega = RatFunc::zero(k);
          // nu == 0 on the cell: the (as-reduced) residue class; else trivial
          bool level_zero = nu.slope == Rat(0) && nu.icept == Rat(0);
          seg.reduction =
              level_zero ? fpx_normalize(r.reduction) : RatFunc::zero(k);
        } else {
          seg.etale = false;
          seg.slope = -nu.slope / Rat((long long)k.p());
          seg.intercept = -nu.icept / Rat((long long)k.p());
          seg.omega = fpx_normalize(r.reduction.derivative());
          seg.reduction = RatFunc::zero(k);
          // slope law: p * slope == -ord_0(omega) - 1 on every radical cell
          if (Rat((long long)k.p()) * seg.slope !=
              Rat(-(long long)seg.omega.ord_at(FqEl(0)) - 1))
            throw std::logic_error("depth_profile: slope law violated");
        }
        rows.push_back(seg);
      };

  // initial cuts: collision radii of branch points with each other and with
  // the center z; exact but only an accelerator (refine re-derives kinks)
  std::vector<Rat> cuts{Rat(0), s_max};
  {
    int R = lcm_int(c.ram(), zram);
    std::vector<Poly> pts;
    for (const auto& bp : c.branch_locus())
      pts.push_back(bp.z.inflate(R / c.ram()));
    pts.push_back(z.inflate(R / zram));
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j) {
        Poly d = pts[i] - pts[j];
        if (d.is_zero()) continue;
        Rat v = ord_t(d, R);
        if (Rat(0) < v && v < s_max) cuts.push_back(v);
      }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }
  for (size_t i = 0; i + 1 < cuts.size(); ++i) refine(cuts[i], cuts[i + 1], 0);

  // merge junctions whose exact point data continues the common segment;
  // keep the others as kinks, checking depth continuity throughout
  std::vector<ProfileSegment> out;
  out.push_back(rows.front());
  for (size_t i = 1; i < rows.size(); ++i) {
    ProfileSegment& prev = out.back();
    const ProfileSegment& curs = rows[i];
    Rat j = curs.from;
    if (prev.to != j)
      throw std::logic_error("depth_profile: segment junction mismatch");
    ProfileSegment pt = point_row(j);
    Rat left = prev.slope * j + prev.intercept;
    Rat right = curs.slope * j + curs.intercept;
    if (left != pt.intercept || right != pt.intercept)
      throw std::logic_error("depth_profile: depth is discontinuous");
    bool same = prev.etale == curs.etale && prev.slope == curs.slope &&
                prev.intercept == curs.intercept && prev.omega == curs.omega &&
                prev.reduction == curs.reduction;
    bool point_matches =
        pt.etale == curs.etale &&
        (curs.etale ? pt.reduction == curs.reduction : pt.omega == curs.omega);
    if (same && point_matches) {
      prev.to = curs.to;
    } else {
      out.push_back(pt);
      out.push_back(curs);
    }
  }
  return out;
}

GoodnessReport good_reduction(const Cover& c) {
  const Fq& k = c.field();
  DegenerationType d = degeneration_type(c, Place::boundary(k));
  GoodnessReport rep;
  rep.conductor_sum = c.conductor_sum();
  if (d.radical) {
    rep.boundary_swan = -d.omega.ord_at(FqEl(0)) - 1;
    rep.delta_boundary = d.delta;
  } else {
    rep.boundary_swan = d.jump;
    rep.delta_boundary = Rat(0);
  }
  rep.delta_ybar = Rat((long long)(k.p() - 1) *
                           (rep.conductor_sum - 1 - rep.boundary_swan),
                       2);
  rep.verdict = rep.delta_boundary == Rat(0) && rep.delta_ybar == Rat(0);
  return rep;
}

}  // namespace hurwitz
