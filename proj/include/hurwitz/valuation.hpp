#pragma once

// Gauss valuations on the analytic function field of the t-adic open unit
// disc.  A Place (s, z) is the valuation nu_{s,z} attached to the closed disc
// of radius |t|^s around the center z(tau):
//
//   nu_{s,z}(sum c_i (X - z)^i) = min_i [ ord_t(c_i) + i*s ],
//
// normalized so that nu(t) = 1.  reduction_at gives the residue of a unit
// ball element as a rational function over the residue field: promote the
// ramification so s becomes integral, substitute X = z + tau^{s*R} x, strip
// the leading tau-power, and set tau = 0.

#include "hurwitz/biv.hpp"
#include "hurwitz/rational.hpp"

namespace hurwitz {

struct Place {
  Rat s;       // radius parameter, s >= 0
  Poly z;      // center, a polynomial in tau
  int zram;    // tau^zram = t for the center's tau

  static Place boundary(const Fq& k) { return Place{Rat(0), Poly(k), 1}; }
  static Place origin_disc(const Fq& k, const Rat& s) { return Place{s, Poly(k), 1}; }
};

// nu_{s,z}(F); throws std::domain_error on F = 0
Rat gauss_valuation(const BivRat& F, const Place& pl);

// valuation together with the reduction [F / tau^{nu}] at the place
struct PlaceValue {
  Rat nu;
  RatFunc reduction;  // over the residue field F_q, coordinate x
};
PlaceValue reduce_at_place(const BivRat& F, const Place& pl);

// tau-polynomial roots of a bivariate polynomial that lie in the closed unit
// disc (ord_t >= 0), found by a Newton-Puiseux search restricted to residue
// digits in F_q.  `complete` reports whether the located roots exhaust
// deg_X(D); when false the remaining factor has roots that are either not
// rational over F_q((t))'s tame extensions searched here or not in the disc.
struct PuiseuxRoots {
  std::vector<std::pair<Poly, int>> roots;  // (z, multiplicity), tau^ram = t
  int ram = 1;
  BivPoly cofactor;  // D / prod (X - z_i)^{m_i}, at ramification `ram`
  bool complete = false;
};
PuiseuxRoots polynomial_roots_in_disc(const BivPoly& D, int ram);

// ord_t of a tau-polynomial (z nonzero), as a rational in t-units
Rat ord_t(const Poly& z, int ram);

// lower Newton hull of the points (i, ord_tau(c_i)) over the nonzero
// X-coefficients c_i of P; vertices in increasing i.  The slopes of its
// edges are the radii where the Gauss-minimizing monomial of P switches.
std::vector<std::pair<int, int>> newton_lower_hull(const BivPoly& P);

}  // namespace hurwitz
