#pragma once

// Degeneration analysis of a Z/p-cover Y^p - Y = F(X, t) of the open t-adic
// unit disc: reduced representatives at a place, depth and differential Swan
// conductors, boundary Swan conductors in residue directions, exact
// piecewise-linear depth profiles, and the good-reduction verdict.

#include <string>
#include <vector>

#include "hurwitz/algebra.hpp"
#include "hurwitz/valuation.hpp"

namespace hurwitz {

struct BranchPoint {
  Poly z;         // coordinate at Cover::ram ramification (tau^ram = t)
  int mult;       // denominator multiplicity of X - z
  int conductor;  // generic-fiber conductor h >= 2, h != 1 mod p
};

// An admissible cover: F proper at infinity (no branching there) and every
// denominator root a tau-polynomial inside the open unit disc, so the branch
// locus collides at t = 0.  The constructor computes the branch locus with
// generic conductors and throws std::invalid_argument when inadmissible.
class Cover {
 public:
  Cover(const Fq& k, BivRat F);
  // text format: "p=<prime>; F=<bivariate expr in X and t>"
  static Cover parse(const std::string& text);

  const Fq& field() const { return *k_; }
  int p() const { return (int)k_->p(); }
  const BivRat& F() const { return F_; }
  int ram() const { return ram_; }  // ramification of branch coordinates
  const std::vector<BranchPoint>& branch_locus() const { return locus_; }
  int conductor_sum() const;

 private:
  const Fq* k_;
  BivRat F_;
  int ram_ = 1;
  std::vector<BranchPoint> locus_;
};

struct ReducedAt {
  BivRat fstar;    // F + (witness^p - witness), reduced at the place
  BivRat witness;
  bool split;      // fstar == 0: the class is trivial
  Rat nu;          // gauss valuation of fstar (meaningless when split)
  RatFunc reduction;  // [fstar] at the place (zero when split)
  int steps;
};
// Reduce F at the place: subtract Artin-Schreier images of lifted p-th roots
// while the valuation is negative and the reduction is a p-th power; at
// valuation zero, pull the univariate as_reduce of the reduction back up.
// Afterwards either nu >= 0 with [fstar] reduced, or nu < 0 with [fstar] not
// a p-th power.  The identity fstar == F + p(witness) is verified exactly.
ReducedAt make_reduced_at(const Cover& c, const Place& pl);

struct DegenerationType {
  bool radical;
  Rat delta;          // radical: -nu/p > 0; etale: 0
  RatFunc omega;      // radical: F_p^x-normalized d[F*]/dx
  RatFunc reduction;  // etale: reduced normalized representative (0 if split)
  int jump;           // etale: largest conductor of the reduction minus 1
};
DegenerationType degeneration_type(const Cover& c, const Place& pl);

struct Direction {
  bool infinite;
  FqEl value;  // meaningful when !infinite
  static Direction infinity() { return {true, 0}; }
  static Direction at(FqEl a) { return {false, a}; }
};
// Radical: -ord_dir(omega) - 1 (with the form order at infinity,
// ord(g dx) = deg den - deg num - 2).  Etale: the classical Swan conductor of
// the reduction in that direction, i.e. its pole order there.
int boundary_swan(const Cover& c, const Place& pl, const Direction& dir);

struct ProfileSegment {
  Rat from, to;          // from == to marks a kink row
  Rat slope, intercept;  // delta(s) = slope*s + intercept on [from, to]
  bool etale;            // delta == 0 here; `reduction` is set instead of omega
  RatFunc omega;         // radical rows
  RatFunc reduction;     // etale rows
};
// Exact piecewise-linear depth profile s -> delta(s, z) on [0, s_max]: open
// segments carry their constant differential conductor (or etale reduction),
// and each interior kink gets a degenerate from == to row evaluated at the
// kink itself.  The slope law p*slope = -ord_0(omega) - 1 is asserted on
// every radical segment.
std::vector<ProfileSegment> depth_profile(const Cover& c, const Poly& z,
                                          int zram, const Rat& s_max);

struct GoodnessReport {
  int conductor_sum;   // sum of generic conductors
  int boundary_swan;   // Swan conductor at the origin direction of (0, 0)
  Rat delta_boundary;  // depth at the boundary place (0, 0)
  Rat delta_ybar;      // (p-1)(conductor_sum - 1 - boundary_swan)/2
  bool verdict;        // delta_boundary == 0 and delta_ybar == 0
};
GoodnessReport good_reduction(const Cover& c);

}  // namespace hurwitz
