#pragma once

// Artin-Schreier calculus on the projective line over F_q: reduction of the
// right-hand side f of y^p - y = f modulo the image of the Artin-Schreier
// map w -> w^p - w, branching data and genus, exactness of f dx, residues.

#include <cstdint>
#include <vector>

#include "hurwitz/ratfunc.hpp"

namespace hurwitz {

// w^p - w
RatFunc artin_schreier_image(const RatFunc& w);

struct ReduceResult {
  RatFunc reduced;  // f* with every pole order (and polynomial-part degree) prime to p
  RatFunc witness;  // W with f == f* + (W^p - W), an exact identity
  bool trivial;     // f lies in the image of the Artin-Schreier map (f* == 0)
};

// Reduce f modulo Artin-Schreier images.  Works place by place: a pole of
// order e = p*e' along a monic irreducible Q is lowered by subtracting
// W^p - W with W = B/Q^{e'} and B^p == (leading coefficient of f along Q)
// mod Q; the polynomial part is lowered the same way at infinity, and a
// trace-zero constant remainder is absorbed exactly.  The returned triple
// always satisfies f == reduced + (witness^p - witness).
ReduceResult as_reduce(const RatFunc& f);

// Conductor multiset of y^p - y = f over the algebraic closure, sorted
// descending: a pole of the reduced form of order d along a degree-r
// irreducible contributes r copies of d+1; a polynomial part of degree d
// contributes one conductor d+1 at infinity.
std::vector<int> branching_datum(const RatFunc& f);

// genus of the smooth projective curve y^p - y = f with conductor multiset
// `datum`: ((sum of conductors) - 2)(p-1)/2.  Entries must be >= 2 and
// != 1 mod p.  An empty datum (everywhere-unramified cover, geometrically
// split) returns 0.
long genus_from_datum(uint32_t p, const std::vector<int>& datum);
long genus(const RatFunc& f);

struct ExactResult {
  bool exact;
  RatFunc antiderivative;  // H with dH = f dx; valid iff exact
};

// Is f dx exact (f = dH/dx for a rational H)?  Criterion: with f = N/D in
// lowest terms and M := N * D^(p-1), f dx is exact iff M has no monomial in
// degree == -1 mod p.  (If H' = f then (H*D^p)' = M since (D^p)' = 0; writing
// H*D^p = Q*D^p + R with R' forced to 0 gives M = Q' for a polynomial Q, so
// M integrates termwise; conversely H := (termwise integral of M)/D^p works.)
ExactResult is_exact(const RatFunc& f);

// residue of f dx at x = a resp. at the infinite place
FqEl residue_at(const RatFunc& f, FqEl a);
FqEl residue_at_infinity(const RatFunc& f);

// Canonical representative of the orbit {c*f : c in F_p^x}, chosen so the
// numerator's leading coefficient has the smallest packed value (1 whenever
// the leading coefficient lies in F_p^x).  Scaling by F_p^x commutes with
// w -> w^p - w, so this picks a canonical member of the Y -> cY isomorphism
// class without changing reducedness or exactness.
RatFunc fpx_normalize(const RatFunc& f);

}  // namespace hurwitz
