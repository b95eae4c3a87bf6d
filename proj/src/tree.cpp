// Hurwitz trees.  validate() walks the decorated tree once and reports every
// axiom instance; tree_from_cover() reads the tree off the cluster filtration
// of the branch locus; realize_tree() builds a cover back from the tree as a
// product of zoomed antiderivatives and re-extracts to verify; extend_tree()
// thickens one leaf into a new vertex.

#include "hurwitz/tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "hurwitz/algebra.hpp"
#include "hurwitz/expr.hpp"
#include "hurwitz/valuation.hpp"

namespace hurwitz {

namespace {

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

Poly embed_poly(const Poly& f, const Fq& dst) {
  if (f.is_zero()) return Poly(dst);
  if (&f.field() == &dst) return f;
  std::vector<FqEl> c(f.deg() + 1);
  for (int i = 0; i <= f.deg(); ++i) c[i] = Fq::embed(f.field(), f.coeff(i), dst);
  return Poly(dst, c);
}

RatFunc embed_ratfunc(const RatFunc& f, const Fq& dst) {
  if (&f.field() == &dst) return f;
  return RatFunc(embed_poly(f.num(), dst), embed_poly(f.den(), dst));
}

HurwitzTree embed_tree(const HurwitzTree& T, const Fq& dst) {
  if (T.field == &dst) return T;
  HurwitzTree U = T;
  U.field = &dst;
  for (auto& v : U.vertices) v.omega = embed_ratfunc(v.omega, dst);
  for (auto& b : U.leaves)
    if (b.position) b.position = Fq::embed(*T.field, *b.position, dst);
  return U;
}

// rootward pole order of omega_v minus one: the invariant d_e carried by the
// edge below v (the differential has order -(d_e + 1) at x = infinity)
int edge_invariant(const RatFunc& omega) { return omega.ord_at_infinity() - 1; }

std::string rat_str(const Rat& r) { return r.str(); }

// ---------------------------------------------------------------------------
// factor-slot assignment: match the poles of omega_v with the childward
// points of v (children need a rational pole of order d_e + 1, leaves a pole
// of order h_b; conjugate leaves share an irreducible factor, one root each)

struct ChildSlot {
  int id;       // child vertex
  int want;     // required pole order d_e + 1
  bool found;
  FqEl pos;     // position on the component (valid iff found)
};

struct LeafSlot {
  int index;    // index into T.leaves
  int want;     // required pole order h_b
  bool found;
  bool taken;   // an explicit position matched a factor already used up
  Poly irr;     // hosting irreducible factor (valid iff found)
  FqEl root;    // a root of irr (valid iff linear)
  bool linear;
};

struct SlotResult {
  bool num_constant = true;
  std::vector<ChildSlot> child;
  std::vector<LeafSlot> leaf;
  std::vector<std::pair<Poly, int>> leftover;  // unmatched pole capacity
};

SlotResult assign_slots(const HurwitzTree& T, int vid, const Fq& work) {
  const TreeVertex& v = T.vertices[vid - 1];
  RatFunc f = embed_ratfunc(v.omega, work);
  SlotResult res;
  res.num_constant = f.num().is_constant();

  struct FactorSlot {
    Poly irr;
    int mult;
    int cap;  // unassigned roots of irr
  };
  std::vector<FactorSlot> fs;
  for (const auto& [irr, mult] : f.den().factor().factors)
    fs.push_back({irr, mult, irr.deg()});

  for (int w : T.children(vid)) {
    ChildSlot cs{w, T.vertices[w - 1].omega.ord_at_infinity(), false, 0};
    for (auto& s : fs)
      if (s.irr.deg() == 1 && s.mult == cs.want && s.cap == 1) {
        s.cap = 0;
        cs.found = true;
        cs.pos = work.neg(s.irr.coeff(0));
        break;
      }
    res.child.push_back(cs);
  }

  // explicit positions claim their factor first; the rest are assigned by
  // conductor, largest first, in the canonical factor order
  std::vector<int> lv = T.leaves_at(vid);
  std::stable_sort(lv.begin(), lv.end(), [&](int a, int b) {
    bool ea = T.leaves[a].position.has_value();
    bool eb = T.leaves[b].position.has_value();
    if (ea != eb) return ea;
    if (ea) return a < b;
    return T.leaves[a].conductor > T.leaves[b].conductor;
  });
  for (int li : lv) {
    const TreeLeaf& b = T.leaves[li];
    LeafSlot ls{li, b.conductor, false, false, Poly(), 0, false};
    if (b.position) {
      FqEl pos = Fq::embed(*T.field, *b.position, work);
      for (auto& s : fs)
        if (s.irr.eval(pos) == 0) {
          if (s.mult != b.conductor) break;
          if (s.cap < 1) {
            ls.taken = true;
            break;
          }
          s.cap -= 1;
          ls.found = true;
          ls.irr = s.irr;
          ls.root = pos;
          ls.linear = true;
          break;
        }
    } else {
      for (auto& s : fs)
        if (s.mult == b.conductor && s.cap >= 1) {
          s.cap -= 1;
          ls.found = true;
          ls.irr = s.irr;
          ls.linear = s.irr.deg() == 1;
          if (ls.linear) ls.root = work.neg(s.irr.coeff(0));
          break;
        }
    }
    res.leaf.push_back(ls);
  }

  for (const auto& s : fs)
    if (s.cap > 0) res.leftover.push_back({s.irr, s.mult});
  return res;
}

std::string leaf_name(const HurwitzTree& T, int index) {
  const TreeLeaf& b = T.leaves[index];
  std::ostringstream os;
  os << "leaf ";
  if (!b.label.empty())
    os << b.label << " ";
  else
    os << "#" << index << " ";
  os << "(h=" << b.conductor << ") at v" << b.vertex;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// tree queries

int HurwitzTree::conductor_sum() const {
  int s = 0;
  for (const auto& b : leaves) s += b.conductor;
  return s;
}

std::vector<int> HurwitzTree::type() const {
  std::vector<int> t;
  for (const auto& b : leaves) t.push_back(b.conductor);
  std::sort(t.rbegin(), t.rend());
  return t;
}

std::vector<int> HurwitzTree::children(int id) const {
  std::vector<int> c;
  for (const auto& v : vertices)
    if (v.parent == id) c.push_back(v.id);
  return c;
}

std::vector<int> HurwitzTree::leaves_at(int id) const {
  std::vector<int> l;
  for (int i = 0; i < (int)leaves.size(); ++i)
    if (leaves[i].vertex == id) l.push_back(i);
  return l;
}

int HurwitzTree::subtree_conductor(int id) const {
  int s = 0;
  for (const auto& b : leaves) {
    int w = b.vertex;
    while (w > id) w = vertices[w - 1].parent;
    if (w == id) s += b.conductor;
  }
  return s;
}

std::string format_tau_poly(const Poly& z, int ram) {
  if (z.is_zero()) return "0";
  const Fq& k = z.field();
  std::ostringstream os;
  bool first = true;
  for (int e = 0; e <= z.deg(); ++e) {
    FqEl c = z.coeff(e);
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    std::string cs = k.to_string(c);
    bool atom = cs.find('+') == std::string::npos && cs.find('*') == std::string::npos;
    if (e == 0) {
      os << cs;
      continue;
    }
    if (c != k.one()) os << (atom ? cs : "(" + cs + ")") << "*";
    Rat ex(e, ram);
    if (ex == Rat(1))
      os << "t";
    else if (ex.is_integer())
      os << "t^" << ex.num();
    else
      os << "t^(" << ex.str() << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// validation

TreeReport validate(const HurwitzTree& T) {
  TreeReport rep;
  auto add = [&](std::string axiom, bool pass, std::string loc, std::string lhs,
                 std::string rhs, std::string detail) {
    rep.checks.push_back({std::move(axiom), pass, std::move(loc), std::move(lhs),
                          std::move(rhs), std::move(detail)});
    if (!pass) rep.all_pass = false;
  };

  // structure: ids, parents, field, leaf attachment.  Failures here make the
  // numeric axioms meaningless, so they short-circuit.
  std::vector<std::string> hard, soft;
  if (T.field == nullptr) hard.push_back("no coefficient field");
  int n = (int)T.vertices.size();
  if (T.field != nullptr) {
    uint32_t p = T.p();
    for (int i = 0; i < n; ++i) {
      const TreeVertex& v = T.vertices[i];
      if (v.id != i + 1) hard.push_back("vertex ids must be 1..n in order");
      if (v.parent < 0 || v.parent >= v.id)
        hard.push_back("v" + std::to_string(v.id) + ": parent must precede the vertex");
      if (v.omega.is_zero() || !v.omega.num().valid() || &v.omega.field() != T.field)
        hard.push_back("v" + std::to_string(v.id) + ": omega must be nonzero over the tree's field");
      if (!(v.thickness > Rat(0)))
        soft.push_back("v" + std::to_string(v.id) + ": thickness must be positive");
    }
    if (T.leaves.empty()) hard.push_back("a tree needs at least one leaf");
    for (int i = 0; i < (int)T.leaves.size(); ++i) {
      const TreeLeaf& b = T.leaves[i];
      if (b.vertex < 0 || b.vertex > n) hard.push_back("leaf #" + std::to_string(i) + ": no such vertex");
      if (b.vertex == 0 && n > 0)
        hard.push_back("leaf #" + std::to_string(i) + ": attached to the root of a nonempty tree");
      if (b.conductor < 2 || b.conductor % (int)p == 1)
        soft.push_back("leaf #" + std::to_string(i) + ": conductor " + std::to_string(b.conductor) +
                       " is not admissible (h >= 2, h != 1 mod p)");
    }
    if (n > 0) {
      int root_children = 0;
      for (const auto& v : T.vertices)
        if (v.parent == 0) ++root_children;
      if (root_children != 1)
        hard.push_back("the root must have exactly one child (found " + std::to_string(root_children) + ")");
    } else if (T.leaves.size() != 1) {
      hard.push_back("a tree without vertices must be a single leaf over the root");
    }
    if (T.root_jump < 1 || T.root_jump % (int)p == 0)
      soft.push_back("root jump " + std::to_string(T.root_jump) + " must be positive and prime to p");
    if (T.root_depth < Rat(0)) soft.push_back("root depth must be >= 0");
    // stable marking: every vertex carries at least two childward points
    for (const auto& v : T.vertices)
      if (hard.empty() && (int)(T.children(v.id).size() + T.leaves_at(v.id).size()) < 2)
        soft.push_back("v" + std::to_string(v.id) + ": fewer than two childward points (not stably marked)");
    // explicit positions on one component must be distinct
    if (hard.empty())
      for (int id = 1; id <= n; ++id) {
        std::vector<FqEl> seen;
        for (int li : T.leaves_at(id))
          if (T.leaves[li].position) {
            FqEl q = *T.leaves[li].position;
            if (std::find(seen.begin(), seen.end(), q) != seen.end())
              soft.push_back("v" + std::to_string(id) + ": duplicate leaf position " +
                             T.field->to_string(q));
            seen.push_back(q);
          }
      }
  }
  {
    std::string detail;
    for (const auto& s : hard) detail += (detail.empty() ? "" : "; ") + s;
    for (const auto& s : soft) detail += (detail.empty() ? "" : "; ") + s;
    add("S", hard.empty() && soft.empty(), "tree", "", "", detail);
    if (!hard.empty()) return rep;
  }

  uint32_t p = T.p();
  int n2 = (int)T.vertices.size();

  if (n2 == 0) {
    const TreeLeaf& b = T.leaves[0];
    add("H1", T.root_depth >= Rat(0), "v0", rat_str(T.root_depth), ">= 0", "");
    add("H4", T.root_jump == b.conductor - 1, "e(v0->leaf)",
        std::to_string(T.root_jump + 1), std::to_string(b.conductor),
        "conductor over the boundary vs the leaf conductor");
    return rep;
  }

  std::vector<SlotResult> slots;
  for (int id = 1; id <= n2; ++id) slots.push_back(assign_slots(T, id, *T.field));

  for (int id = 1; id <= n2; ++id) {
    const TreeVertex& v = T.vertices[id - 1];
    std::string loc = "v" + std::to_string(id);

    add("H1", v.depth > Rat(0), loc, rat_str(v.depth), "> 0",
        "interior vertices carry positive depth");

    ExactResult ex = is_exact(v.omega);
    std::string edetail;
    if (!ex.exact) {
      for (const auto& [r, mult] : v.omega.den().roots()) {
        FqEl res = residue_at(v.omega, r);
        if (res != 0) {
          edetail = "residue " + T.field->to_string(res) + " at x=" + T.field->to_string(r);
          break;
        }
      }
      if (edetail.empty()) edetail = "no rational antiderivative";
    }
    add("E", ex.exact, loc, "", "", edetail);

    const SlotResult& sl = slots[id - 1];
    {
      std::string d2;
      if (!sl.num_constant) d2 = "omega has a zero on the punctured component";
      for (const auto& [irr, mult] : sl.leftover)
        d2 += (d2.empty() ? "" : "; ") + ("pole of order " + std::to_string(mult) + " along " +
                                          format_poly(irr, "x") + " is not a marked point");
      add("H2", sl.num_constant && sl.leftover.empty(), loc, "", "", d2);
    }

    for (const auto& ls : sl.leaf) {
      std::string lloc = leaf_name(T, ls.index);
      std::string d3 = ls.taken ? "position already carries another point" : "";
      add("H6", ls.found, lloc, std::to_string(ls.want),
          ls.found ? std::to_string(ls.want) : "absent",
          ls.found ? "" : (d3.empty() ? "omega has no free pole of that order" : d3));
    }
  }

  // edge checks, ordered by the childward vertex
  for (int id = 1; id <= n2; ++id) {
    const TreeVertex& v = T.vertices[id - 1];
    int s = v.parent;
    std::string eloc = "e(v" + std::to_string(s) + "->v" + std::to_string(id) + ")";
    int de = edge_invariant(v.omega);

    if (s == 0) {
      add("H4", T.root_jump == de, eloc, std::to_string(T.root_jump + 1),
          std::to_string(de + 1),
          "conductor over the boundary vs the rootward pole order of omega_v" +
              std::to_string(id));
    } else {
      const SlotResult& psl = slots[s - 1];
      bool found = false;
      for (const auto& cs : psl.child)
        if (cs.id == id) found = cs.found;
      bool prime = de % (int)p != 0;
      std::string d4;
      if (!found)
        d4 = "omega_v" + std::to_string(s) + " has no rational pole of order " +
             std::to_string(de + 1) + " for this edge";
      if (!prime) d4 += (d4.empty() ? "" : "; ") + std::string("d_e is divisible by p");
      add("H3", found && prime, eloc, std::to_string(de + 1),
          found ? std::to_string(de + 1) : "absent", d4);
    }

    Rat ds = s == 0 ? T.root_depth : T.vertices[s - 1].depth;
    Rat expect = ds + v.thickness * Rat(de);
    add("H5", v.depth == expect, eloc, rat_str(v.depth), rat_str(expect),
        "depth must grow by thickness times d_e along the edge");

    int below = T.subtree_conductor(id);
    add("L", de == below - 1, eloc, std::to_string(de), std::to_string(below - 1),
        "d_e vs the conductor sum beyond the edge, minus one");
  }

  return rep;
}

// ---------------------------------------------------------------------------
// extraction: the cluster filtration of the branch locus

namespace {

void build_cluster(const Cover& c, HurwitzTree& T, int parent_id, const Rat& s_parent,
                   const std::vector<int>& members) {
  const auto& locus = c.branch_locus();
  int R = c.ram();

  Rat sC;
  bool first = true;
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i + 1; j < members.size(); ++j) {
      Poly d = locus[members[i]].z - locus[members[j]].z;
      if (d.is_zero())
        throw std::domain_error("tree_from_cover: branch points coincide");
      Rat v = ord_t(d, R);
      if (first || v < sC) sC = v;
      first = false;
    }

  int ci = members[0];
  for (int b : members)
    if (poly_less(locus[b].z, locus[ci].z)) ci = b;
  const Poly& center = locus[ci].z;

  DegenerationType dt = degeneration_type(c, Place{sC, center, R});
  if (!dt.radical)
    throw std::domain_error(
        "tree_from_cover: the cover splits at the interior place s=" + sC.str() +
        "; no Hurwitz tree");

  int id = (int)T.vertices.size() + 1;
  Rat eps = (sC - s_parent) / Rat((long long)c.field().p());
  T.vertices.push_back({id, parent_id, eps, dt.delta, dt.omega});

  // classes of the next filtration level: z_i ~ z_j iff nu(z_i - z_j) > s_C
  std::vector<std::vector<int>> classes;
  std::vector<int> rest = members;
  while (!rest.empty()) {
    std::vector<int> cls{rest[0]}, keep;
    for (size_t i = 1; i < rest.size(); ++i) {
      Poly d = locus[rest[i]].z - locus[rest[0]].z;
      if (ord_t(d, R) > sC)
        cls.push_back(rest[i]);
      else
        keep.push_back(rest[i]);
    }
    classes.push_back(cls);
    rest = keep;
  }
  for (auto& cls : classes) {
    int m = cls[0];
    for (int b : cls)
      if (poly_less(locus[b].z, locus[m].z)) m = b;
    std::swap(cls[0], cls[std::find(cls.begin(), cls.end(), m) - cls.begin()]);
  }
  std::sort(classes.begin(), classes.end(), [&](const auto& a, const auto& b) {
    return poly_less(locus[a[0]].z, locus[b[0]].z);
  });

  long long e = (sC * Rat((long long)R)).as_integer();
  for (const auto& cls : classes) {
    if (cls.size() == 1) {
      int b = cls[0];
      FqEl pos = (locus[b].z - center).coeff((int)e);
      T.leaves.push_back({id, locus[b].conductor, format_tau_poly(locus[b].z, R), pos});
    } else {
      build_cluster(c, T, id, sC, cls);
    }
  }
}

}  // namespace

HurwitzTree tree_from_cover(const Cover& c) {
  const Fq& k = c.field();
  const auto& locus = c.branch_locus();
  if (locus.size() < 2)
    throw std::domain_error(
        "tree_from_cover: need at least two branch points in the open disc");
  int R = c.ram();
  for (const auto& b : locus)
    if (!b.z.is_zero() && !(ord_t(b.z, R) > Rat(0)))
      throw std::domain_error("tree_from_cover: branch point on the boundary");

  HurwitzTree T;
  T.field = &k;
  Place bd = Place::boundary(k);
  DegenerationType d0 = degeneration_type(c, bd);
  if (d0.radical) {
    T.root_depth = d0.delta;
    T.root_jump = boundary_swan(c, bd, Direction::at(k.zero()));
  } else {
    T.root_depth = Rat(0);
    T.root_jump = d0.jump;
  }

  std::vector<int> all(locus.size());
  std::iota(all.begin(), all.end(), 0);
  build_cluster(c, T, 0, Rat(0), all);
  return T;
}

// ---------------------------------------------------------------------------
// isomorphism

bool forms_affine_equivalent(const RatFunc& f, const RatFunc& g) {
  if (&f.field() != &g.field())
    throw std::invalid_argument("forms_affine_equivalent: mixed fields");
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  if (f.ord_at_infinity() != g.ord_at_infinity()) return false;
  if (f.den().deg() != g.den().deg() || f.num().deg() != g.num().deg()) return false;

  const Fq& k = f.field();
  // u ranges over the prime field units: y -> u*y is a cover isomorphism, so
  // u*omega carries the same degeneration data as omega
  auto test = [&](FqEl a, FqEl b) {
    RatFunc h = f.compose_affine(a, b).scaled(a);
    for (FqEl u = 1; u < k.p(); ++u)
      if (g == h.scaled(u)) return true;
    return false;
  };

  // an affine x -> ax+b matching g = u*a*f(ax+b) maps poles of g to poles of
  // f; anchoring one rational pole pair leaves only the scale to scan
  auto rf = f.den().roots();
  auto rg = g.den().roots();
  if (!rf.empty() && !rg.empty()) {
    for (const auto& [pf, mf] : rf)
      for (const auto& [pg, mg] : rg) {
        if (mf != mg) continue;
        for (FqEl a = 1; a < k.q(); ++a)
          if (test(a, k.sub(pf, k.mul(a, pg)))) return true;
      }
    return false;
  }
  for (FqEl a = 1; a < k.q(); ++a)
    for (FqEl b = 0; b < k.q(); ++b)
      if (test(a, b)) return true;
  return false;
}

namespace {

bool match_vertex(const HurwitzTree& A, const HurwitzTree& B, int ia, int ib);

bool match_children(const HurwitzTree& A, const HurwitzTree& B,
                    const std::vector<int>& ca, const std::vector<int>& cb,
                    std::vector<bool>& used, size_t i) {
  if (i == ca.size()) return true;
  for (size_t j = 0; j < cb.size(); ++j) {
    if (used[j]) continue;
    if (match_vertex(A, B, ca[i], cb[j])) {
      used[j] = true;
      if (match_children(A, B, ca, cb, used, i + 1)) return true;
      used[j] = false;
    }
  }
  return false;
}

bool match_vertex(const HurwitzTree& A, const HurwitzTree& B, int ia, int ib) {
  const TreeVertex& va = A.vertices[ia - 1];
  const TreeVertex& vb = B.vertices[ib - 1];
  if (va.thickness != vb.thickness || va.depth != vb.depth) return false;
  std::vector<int> ha, hb;
  for (int li : A.leaves_at(ia)) ha.push_back(A.leaves[li].conductor);
  for (int li : B.leaves_at(ib)) hb.push_back(B.leaves[li].conductor);
  std::sort(ha.begin(), ha.end());
  std::sort(hb.begin(), hb.end());
  if (ha != hb) return false;
  if (!forms_affine_equivalent(va.omega, vb.omega)) return false;
  std::vector<int> ca = A.children(ia), cb = B.children(ib);
  if (ca.size() != cb.size()) return false;
  std::vector<bool> used(cb.size(), false);
  return match_children(A, B, ca, cb, used, 0);
}

}  // namespace

bool tree_isomorphic(const HurwitzTree& a, const HurwitzTree& b) {
  if (a.field == nullptr || b.field == nullptr) return false;
  if (a.field->p() != b.field->p()) return false;
  uint32_t m = std::lcm(a.field->m(), b.field->m());
  const Fq& K = Fq::get(a.field->p(), m);
  HurwitzTree A = embed_tree(a, K), B = embed_tree(b, K);
  if (A.root_depth != B.root_depth || A.root_jump != B.root_jump) return false;
  if (A.vertices.size() != B.vertices.size() || A.leaves.size() != B.leaves.size())
    return false;
  if (A.vertices.empty())
    return !A.leaves.empty() && A.leaves[0].conductor == B.leaves[0].conductor;
  std::vector<int> ra = A.children(0), rb = B.children(0);
  if (ra.size() != 1 || rb.size() != 1) return false;
  return match_vertex(A, B, ra[0], rb[0]);
}

bool trees_structurally_equal(const HurwitzTree& a, const HurwitzTree& b) {
  if (a.field != b.field) return false;
  if (a.root_depth != b.root_depth || a.root_jump != b.root_jump) return false;
  if (a.vertices.size() != b.vertices.size() || a.leaves.size() != b.leaves.size())
    return false;
  for (size_t i = 0; i < a.vertices.size(); ++i) {
    const TreeVertex &va = a.vertices[i], &vb = b.vertices[i];
    if (va.id != vb.id || va.parent != vb.parent || va.thickness != vb.thickness ||
        va.depth != vb.depth || va.omega != vb.omega)
      return false;
  }
  for (size_t i = 0; i < a.leaves.size(); ++i) {
    const TreeLeaf &la = a.leaves[i], &lb = b.leaves[i];
    if (la.vertex != lb.vertex || la.conductor != lb.conductor || la.label != lb.label)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// growing

HurwitzTree extend_tree(const HurwitzTree& T, int leaf_index,
                        const std::vector<int>& split, const RatFunc& omega_new) {
  if (T.field == nullptr) throw std::invalid_argument("extend_tree: tree has no field");
  uint32_t p = T.p();
  if (leaf_index < 0 || leaf_index >= (int)T.leaves.size())
    throw std::invalid_argument("extend_tree: no leaf #" + std::to_string(leaf_index));
  const TreeLeaf leaf = T.leaves[leaf_index];

  if (split.size() < 2)
    throw std::invalid_argument("extend_tree: a split needs at least two parts");
  long long sum = 0;
  for (int h : split) {
    if (h < 2 || h % (int)p == 1)
      throw std::invalid_argument("extend_tree: part " + std::to_string(h) +
                                  " is not an admissible conductor");
    sum += h;
  }
  if (sum != leaf.conductor)
    throw std::invalid_argument("extend_tree: split sums to " + std::to_string(sum) +
                                ", leaf conductor is " + std::to_string(leaf.conductor));

  if (omega_new.is_zero() || &omega_new.field() != T.field)
    throw std::invalid_argument("extend_tree: omega must be nonzero over the tree's field");
  if (!omega_new.num().is_constant())
    throw std::invalid_argument("extend_tree: omega has a zero on the new component");
  std::vector<int> orders;
  for (const auto& [irr, mult] : omega_new.den().factor().factors)
    for (int i = 0; i < irr.deg(); ++i) orders.push_back(mult);
  std::vector<int> want = split;
  std::sort(orders.rbegin(), orders.rend());
  std::sort(want.rbegin(), want.rend());
  if (orders != want) {
    std::string os, ws;
    for (int o : orders) os += (os.empty() ? "" : ",") + std::to_string(o);
    for (int w : want) ws += (ws.empty() ? "" : ",") + std::to_string(w);
    throw std::invalid_argument("extend_tree: omega has pole orders {" + os +
                                "}, split asks for {" + ws + "}");
  }
  if (!is_exact(omega_new).exact)
    throw std::invalid_argument("extend_tree: omega is not exact");

  HurwitzTree U = T;
  int id = (int)U.vertices.size() + 1;
  Rat parent_depth = leaf.vertex == 0 ? U.root_depth : U.vertices[leaf.vertex - 1].depth;
  U.vertices.push_back(
      {id, leaf.vertex, Rat(1), parent_depth + Rat(leaf.conductor - 1), omega_new});
  U.leaves.erase(U.leaves.begin() + leaf_index);
  for (int h : want) U.leaves.push_back({id, h, "", std::nullopt});

  TreeReport rep = validate(U);
  if (!rep.all_pass) {
    for (const auto& c : rep.checks)
      if (!c.pass)
        throw std::invalid_argument("extend_tree: result violates " + c.axiom + " at " +
                                    c.location +
                                    (c.lhs.empty() ? "" : " (" + c.lhs + " != " + c.rhs + ")"));
  }
  return U;
}

// ---------------------------------------------------------------------------
// realization

namespace {

// thrown inside the realization search to request a larger coefficient field
struct NeedExtension : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// coefficients of x^{-1}, ..., x^{-n} in the expansion of a proper rational
// function at infinity; index k-1 holds the x^{-k} coefficient
std::vector<FqEl> infinity_tail(const RatFunc& f, int n) {
  std::vector<FqEl> out(n, 0);
  if (f.is_zero() || n <= 0) return out;
  const Fq& k = f.field();
  int dn = f.num().deg(), dd = f.den().deg();
  int gap = dd - dn;
  std::vector<FqEl> rn(dn + 1), rd(dd + 1);
  for (int i = 0; i <= dn; ++i) rn[i] = f.num().coeff(dn - i);
  for (int i = 0; i <= dd; ++i) rd[i] = f.den().coeff(dd - i);
  Poly ser = Poly::series_div(Poly(k, rn), Poly(k, rd), n);
  for (int kk = gap; kk <= n; ++kk) out[kk - 1] = ser.coeff(kk - gap);
  return out;
}

// leading Laurent coefficient of f at a pole of order d:
// [ (x - q)^d * f ](q)
FqEl laurent_lead(const RatFunc& f, FqEl q, int d) {
  const Fq& k = f.field();
  Poly dh = f.den() / Poly::linear_root(k, q).pow(d);
  return k.div(f.num().eval(q), dh.eval(q));
}

// antiderivative of f dx with all p-divisible kernel junk pushed into the
// anchor: at every other special point the pole order is stripped down to the
// canonical one, and the expansion at infinity is made to start exactly at
// x^{-d} with d = ord(f) - 1.  The corrections are kernel elements
// (x - q)^{-pj}, so the derivative stays f throughout.
RatFunc headless_antiderivative(const RatFunc& f,
                                const std::vector<std::pair<FqEl, int>>& canon,
                                bool have_anchor, FqEl anchor) {
  const Fq& k = f.field();
  int d = f.ord_at_infinity() - 1;
  ExactResult ex = is_exact(f);
  if (!ex.exact) throw std::logic_error("headless_antiderivative: form is not exact");
  RatFunc H = ex.antiderivative.split_polynomial_part().second;
  for (const auto& [q, want] : canon) {
    if (have_anchor && q == anchor) continue;
    for (;;) {
      int o = -H.ord_at(q);
      if (o <= want) break;
      if (o % (int)k.p() != 0)
        throw std::logic_error("headless_antiderivative: non-kernel excess pole");
      FqEl c = laurent_lead(H, q, o);
      H = H - RatFunc(Poly::constant(k, c)) * RatFunc(Poly::linear_root(k, q)).pow(-o);
    }
    if (-H.ord_at(q) != want)
      throw std::logic_error("headless_antiderivative: pole below its canonical order");
  }
  for (;;) {
    std::vector<FqEl> tail = infinity_tail(H, d - 1);
    int kk = 0;
    for (int i = d - 1; i >= 1; --i)
      if (tail[i - 1] != 0) {
        kk = i;
        break;
      }
    if (kk == 0) break;
    if (kk % (int)k.p() != 0)
      throw std::logic_error("headless_antiderivative: non-p-divisible head survives");
    if (!have_anchor)
      throw NeedExtension("a p-divisible head obstructs a vertex without leaves");
    H = H - RatFunc(Poly::constant(k, tail[kk - 1])) *
                RatFunc(Poly::linear_root(k, anchor)).pow(-kk);
  }
  if (H.ord_at_infinity() != d)
    throw std::logic_error("headless_antiderivative: wrong order at infinity");
  return H;
}

// smallest lambda with lambda^d = c, via the discrete logarithm on the cyclic
// multiplicative group
std::optional<FqEl> power_root(const Fq& k, FqEl c, long long d) {
  if (c == 0) return std::nullopt;
  FqEl g = k.gen();
  long long q1 = (long long)k.q() - 1;
  long long ic = -1;
  FqEl acc = k.one();
  for (long long j = 0; j < q1; ++j) {
    if (acc == c) {
      ic = j;
      break;
    }
    acc = k.mul(acc, g);
  }
  if (ic < 0) return std::nullopt;
  long long gd = std::gcd(d % q1, q1);
  if (ic % gd != 0) return std::nullopt;
  // solve (d/gd) * x = ic/gd  (mod q1/gd)
  long long dm = (d % q1) / gd, mm = q1 / gd, rm = (ic / gd) % mm;
  long long x = 0, best = -1;
  for (long long inv = 0; inv < mm; ++inv)
    if ((dm * inv) % mm == 1) {
      x = (inv * rm) % mm;
      break;
    }
  // the solutions are x + j*mm; pick the smallest resulting element
  FqEl lam = 0;
  for (long long j = 0; j < gd; ++j) {
    FqEl cand = k.pow(g, x + j * mm);
    if (best < 0 || cand < lam) lam = cand, best = 0;
  }
  return lam;
}

// P((X - z) / (lambda * tau^e)) * tau^{e * deg_x P}, coefficientwise
BivPoly subst_zoom(const Fq& k, const BivPoly& P, const Poly& z, long long e, FqEl lambda_inv) {
  int D = P.deg_x();
  BivPoly base = BivPoly::X(k) - BivPoly::constant(k, z);
  BivPoly acc(k);
  BivPoly pw = BivPoly::constant(k, Poly::constant(k, 1));
  for (int i = 0; i <= D; ++i) {
    Poly ci = P.coeff(i).scaled(k.pow(lambda_inv, i)) * Poly::x(k).pow(e * (D - i));
    acc = acc + pw.scaled(ci);
    if (i < D) pw = pw * base;
  }
  return acc;
}

// G_w((X - Q tau^e) / (lambda tau^e)) at ramification R (R must clear e)
BivRat zoom_child(const BivRat& Gw, FqEl Q, long long eR, int R, FqEl lambda) {
  int RR = (int)lcm_ll(R, Gw.ram());
  BivRat g = Gw.with_ram(RR);
  long long e = eR * (RR / R);
  const Fq& k = g.field();
  Poly z = Poly::x(k).pow(e).scaled(Q);
  FqEl li = k.inv(lambda);
  BivPoly N = subst_zoom(k, g.num(), z, e, li);
  BivPoly D = subst_zoom(k, g.den(), z, e, li);
  int gap = g.den().deg_x() - g.num().deg_x();
  N = N.scaled(Poly::x(k).pow(e * gap));
  return BivRat(N, D, RR);
}

struct RecPiece {
  BivRat G;
  FqEl unit;  // leading coefficient of the expansion at the disc boundary
};

// Realize the subtree below v over K, with every differential in the subtree
// scaled by `scale`.  The result G satisfies: Cover(K, G) standalone has the
// scaled subtree as its Hurwitz tree, G is etale of jump d_v at the boundary
// with expansion unit*X^{-d_v}*(1 + O(t^{>0})), and all branch points lie in
// the open disc.
RecPiece realize_rec(const HurwitzTree& T, const Fq& K, int vid, FqEl scale) {
  const TreeVertex& v = T.vertices[vid - 1];
  RatFunc f = embed_ratfunc(v.omega, K).scaled(scale);
  int d_v = f.ord_at_infinity() - 1;
  uint32_t p = K.p();

  SlotResult sl = assign_slots(T, vid, K);
  for (const auto& ls : sl.leaf)
    if (!ls.found || !ls.linear)
      throw NeedExtension("branch positions of v" + std::to_string(vid) +
                          " are not rational over F_" + std::to_string(K.q()));
  for (const auto& cs : sl.child)
    if (!cs.found) throw std::logic_error("realize: child slot missing on a valid tree");

  bool have_anchor = !sl.leaf.empty();
  FqEl anchor = have_anchor ? sl.leaf.front().root : 0;
  std::vector<std::pair<FqEl, int>> canon;
  for (const auto& cs : sl.child) canon.push_back({cs.pos, cs.want - 1});
  for (const auto& ls : sl.leaf) canon.push_back({ls.root, ls.want - 1});
  RatFunc H = headless_antiderivative(f, canon, have_anchor, anchor);

  // factor H over K: unit, zeros, and poles at the assigned positions
  FqEl c0 = H.num().lc();
  auto zeros = H.num().roots();
  int zdeg = 0;
  for (const auto& [a, m] : zeros) zdeg += m;
  if (zdeg != H.num().deg())
    throw NeedExtension("zeros of the antiderivative at v" + std::to_string(vid) +
                        " are not rational over F_" + std::to_string(K.q()));
  std::map<FqEl, int> pole_order;
  for (const auto& [r, m] : H.den().roots()) pole_order[r] = m;
  {
    int pdeg = 0;
    for (const auto& [r, m] : pole_order) pdeg += m;
    if (pdeg != H.den().deg())
      throw std::logic_error("realize: antiderivative has poles off the marked points");
  }

  // children first: each pole order there must stay at d_w, and the subtree
  // is rescaled so that the zoomed factor reduces to exactly (x - Q_w)^{-d_w}
  struct ChildPiece {
    FqEl Q;
    int d;
    BivRat G;
    FqEl lambda;
  };
  std::vector<ChildPiece> pieces;
  for (const auto& cs : sl.child) {
    int dw = cs.want - 1;
    auto it = pole_order.find(cs.pos);
    if (it == pole_order.end() || it->second != dw)
      throw NeedExtension("head correction at v" + std::to_string(vid) +
                          " disturbed the pole of edge v" + std::to_string(cs.id));
    pole_order.erase(it);
    FqEl aw = laurent_lead(H, cs.pos, dw);
    RecPiece sub = realize_rec(T, K, cs.id, K.inv(aw));
    auto lam = power_root(K, K.inv(sub.unit), dw);
    if (!lam)
      throw NeedExtension("no " + std::to_string(dw) + "-th root of the boundary unit of v" +
                          std::to_string(cs.id) + " in F_" + std::to_string(K.q()));
    pieces.push_back({cs.pos, dw, sub.G, *lam});
  }

  // ramification clearing the zoom radius and the depth weight
  Rat s = Rat((long long)p) * v.thickness;
  Rat weight = s * Rat(d_v);  // p * eps_v * d_v
  long long R = lcm_ll(s.den(), weight.den());
  for (const auto& cp : pieces) R = lcm_ll(R, cp.G.ram());
  long long eR = (s * Rat(R)).as_integer();
  long long wR = (weight * Rat(R)).as_integer();

  Poly one = Poly::constant(K, 1);
  BivRat G = BivRat(BivPoly::constant(K, Poly::constant(K, c0)),
                    BivPoly::constant(K, Poly::x(K).pow(wR)), (int)R);
  for (const auto& cp : pieces) G = G * zoom_child(cp.G, cp.Q, eR, (int)R, cp.lambda);
  for (const auto& [r, m] : pole_order) {
    BivPoly den = (BivPoly::X(K) - BivPoly::constant(K, Poly::x(K).pow(eR).scaled(r))).pow(m);
    G = G * BivRat(BivPoly::constant(K, Poly::x(K).pow(eR * m)), den, (int)R);
  }
  for (const auto& [a, m] : zeros) {
    BivPoly num = (BivPoly::X(K) - BivPoly::constant(K, Poly::x(K).pow(eR).scaled(a))).pow(m);
    G = G * BivRat(num, BivPoly::constant(K, Poly::x(K).pow(eR * m)), (int)R);
  }
  return {G, c0};
}

Cover assemble_over(const HurwitzTree& T, const Fq& K) {
  int rc = T.children(0)[0];
  RecPiece top = realize_rec(T, K, rc, K.one());
  BivRat F = top.G;
  if (T.root_depth > Rat(0)) {
    Rat w = Rat((long long)K.p()) * T.root_depth;
    int R = (int)lcm_ll(F.ram(), w.den());
    long long wR = (w * Rat((long long)R)).as_integer();
    F = F.with_ram(R) *
        BivRat(BivPoly::constant(K, Poly::constant(K, 1)),
               BivPoly::constant(K, Poly::x(K).pow(wR)), R);
  }
  return Cover(K, F);
}

}  // namespace

Cover realize_tree(const HurwitzTree& T) {
  TreeReport rep = validate(T);
  if (!rep.all_pass)
    for (const auto& c : rep.checks)
      if (!c.pass)
        throw std::invalid_argument("realize_tree: tree violates " + c.axiom + " at " +
                                    c.location +
                                    (c.lhs.empty() ? "" : " (" + c.lhs + " != " + c.rhs + ")"));

  const Fq& k0 = *T.field;
  uint32_t p = k0.p();

  if (T.vertices.empty()) {
    // single branch point at the origin: t^{-p delta0} / X^{h-1}
    int h = T.leaves[0].conductor;
    Rat w = Rat((long long)p) * T.root_depth;
    int R = (int)w.den();
    long long wR = (w * Rat((long long)R)).as_integer();
    BivPoly den = BivPoly::X(k0).pow(h - 1) *
                  BivPoly::constant(k0, Poly::x(k0).pow(wR));
    return Cover(k0, BivRat(BivPoly::constant(k0, Poly::constant(k0, 1)), den, R));
  }

  std::vector<std::string> attempts;
  for (uint32_t e = 1; e <= 6; ++e) {
    uint32_t m = k0.m() * e;
    double q = 1;
    for (uint32_t i = 0; i < m; ++i) q *= p;
    if (q > (double)(1u << 22)) break;
    const Fq& K = Fq::get(p, m);
    std::string where = "F_" + std::to_string((long long)q);
    try {
      Cover c = assemble_over(T, K);
      HurwitzTree back = tree_from_cover(c);
      if (tree_isomorphic(T, back)) return c;
      attempts.push_back(where + ": assembled cover extracts to a different tree");
    } catch (const NeedExtension& ex) {
      attempts.push_back(where + ": " + ex.what());
    } catch (const std::exception& ex) {
      attempts.push_back(where + ": " + ex.what());
    }
  }
  std::string msg = "realize_tree: search exhausted";
  for (const auto& a : attempts) msg += "; " + a;
  throw RealizeError(msg);
}

}  // namespace hurwitz
