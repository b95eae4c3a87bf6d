#pragma once

// Hurwitz trees: the combinatorial degeneration data of a Z/p-cover of the
// disc.  A tree carries a root datum (depth, jump), decorated vertices
// (thickness of the edge to the parent, depth, differential conductor) and
// leaves (generic-fiber conductors at the branch points).  This module
// validates the axioms, extracts the tree of a cover, realizes a tree as a
// cover, and grows trees by thickening a leaf.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hurwitz/swan.hpp"

namespace hurwitz {

struct TreeVertex {
  int id;         // 1-based; parents precede children
  int parent;     // 0 is the root
  Rat thickness;  // annulus thickness of the edge to the parent
  Rat depth;      // delta_v > 0
  RatFunc omega;  // differential conductor omega_v = (omega) dx
};

struct TreeLeaf {
  int vertex;         // attachment vertex; 0 only in the height-zero tree
  int conductor;      // h_b >= 2, h_b != 1 mod p
  std::string label;  // display tag, e.g. the branch point "t^5"
  // marked point on the component, when known (extraction fills this in;
  // validation otherwise assigns positions from the factors of omega)
  std::optional<FqEl> position;
};

struct HurwitzTree {
  const Fq* field = nullptr;
  Rat root_depth;     // delta_{v0} >= 0; 0 means etale boundary
  int root_jump = 0;  // d with p !| d; boundary representative 1/x^d
  std::vector<TreeVertex> vertices;
  std::vector<TreeLeaf> leaves;

  uint32_t p() const { return field->p(); }
  int conductor_sum() const;
  std::vector<int> type() const;  // leaf conductors, descending
  std::vector<int> children(int id) const;
  std::vector<int> leaves_at(int id) const;  // indices into `leaves`
  int subtree_conductor(int id) const;       // sum of conductors below id
};

struct AxiomCheck {
  std::string axiom;     // "S" structure, "H1".."H6", "E" exactness, "L" lemma
  bool pass;
  std::string location;  // e.g. "v2", "edge v1->v2", "leaf t^5"
  std::string lhs, rhs;  // the two sides of the violated (or checked) identity
  std::string detail;
};

struct TreeReport {
  bool all_pass = true;
  std::vector<AxiomCheck> checks;
};

// Check the decorated tree against the Hurwitz-tree axioms and report every
// failure with its location and both sides of the identity.  H4 is reported
// in conductor units (d + 1 against d_{e0} + 1) and H5 in depth units; the
// sign of d_e follows ord of omega at the rootward point plus one, which
// orients the depth recursion increasing away from the root.
TreeReport validate(const HurwitzTree& T);

// Extract the Hurwitz tree of an admissible cover: cluster the branch locus
// by pairwise valuations, read (depth, omega) at each cluster place, and the
// root datum at the boundary.  Throws std::domain_error when the cover has
// fewer than two branch points or a branch point on the boundary.
HurwitzTree tree_from_cover(const Cover& c);

struct RealizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Construct a cover whose extracted tree is isomorphic to T (checked by
// round trip before returning; RealizeError reports an exhausted search).
// The cover may live over an extension field when pole positions or scaling
// roots require one.
Cover realize_tree(const HurwitzTree& T);

// Thicken leaf `leaf_index` into a new vertex of type `split` carrying
// `omega_new`: the split must sum to the leaf conductor, have at least two
// parts, and omega_new must be exact of that type.  The result validates.
HurwitzTree extend_tree(const HurwitzTree& T, int leaf_index,
                        const std::vector<int>& split,
                        const RatFunc& omega_new);

// Isomorphism of decorated trees: equal root data, matching depths and
// thicknesses, equal leaf-conductor multisets, and differential conductors
// equal up to affine coordinate change, recursively over children (fields
// may differ by a canonical embedding).
bool tree_isomorphic(const HurwitzTree& a, const HurwitzTree& b);

// Does g dx match f dx up to an affine substitution x -> a*x + b and a prime
// field unit u (the cover isomorphism y -> u*y), i.e. g(x) == u * a *
// f(a*x + b)?  Fields must agree.
bool forms_affine_equivalent(const RatFunc& f, const RatFunc& g);

// Field-by-field equality of the serialized data (positions excluded).
bool trees_structurally_equal(const HurwitzTree& a, const HurwitzTree& b);

// "0", "t^5", "t^5+2*t^10", fractional exponents as t^(e/ram)
std::string format_tau_poly(const Poly& z, int ram);

// JSON serialization (json_io.cpp); parse errors throw std::invalid_argument
std::string tree_to_json(const HurwitzTree& T);
HurwitzTree tree_from_json(const std::string& text);
std::string report_to_json(const TreeReport& r);

}  // namespace hurwitz
