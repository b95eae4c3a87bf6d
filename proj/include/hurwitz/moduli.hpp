#pragma once

// The stratification of the moduli space AS_g of Artin-Schreier covers of
// genus g: strata are indexed by partitions of d+2 = 2g/(p-1) + 2 with parts
// >= 2 and != 1 mod p, and the directed graph C_d records which strata lie
// in the closure of which.  Connectedness of C_d decides connectedness of
// AS_g.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/forms.hpp"

namespace hurwitz {

struct Stratum {
  std::vector<int> partition;  // descending; parts >= 2, != 1 mod p
  int dimension = 0;           // d - 1 - sum_j floor((h_j - 1)/p)
};

// d - 1 - sum floor((h_j-1)/p) with d = sum(E) - 2.  The value is -1 for the
// degenerate d = 0 stratum {2}; everywhere else it is nonnegative.
int stratum_dimension(const std::vector<int>& partition, uint32_t p);

// All strata of AS_g: partitions of d+2 in canonical order (fewer parts
// first, then descending lexicographic).  Empty optional when 2g/(p-1) is
// not a nonnegative integer -- AS_g is empty then.  The vector itself can
// be empty (no legal partition), which also means an empty moduli space.
std::optional<std::vector<Stratum>> enumerate_strata(uint32_t p, long long g);

// one part of E1 together with the sub-multiset of E2 it deforms into
struct PartChain {
  int part;
  std::vector<int> block;  // descending, sums to part
  ChainWitness chain;
};

struct Deformation {
  bool exists = false;
  bool certain = true;  // false when a no might be an effort-cap artifact
  std::vector<PartChain> parts;  // filled on exists, aligned with E1
};

// Is Gamma_{E1} contained in the closure of Gamma_{E2}?  True iff E2 refines
// E1 via some block assignment whose every part admits a chain.  E1 == E2 is
// trivially true.  Requires equal sums and valid partitions.
Deformation deformation_exists(const std::vector<int>& e1,
                               const std::vector<int>& e2, uint32_t p,
                               const FormConfig& cfg = {});

struct ModuliGraph {
  uint32_t p = 0;
  long long g = 0;
  int d = 0;
  std::vector<Stratum> strata;
  // edge (i, j) means Gamma_i lies in the closure of Gamma_j (E_j properly
  // refines E_i); sorted by (i, j)
  std::vector<std::pair<int, int>> edges;
  std::vector<int> component_of;  // weak-component index per stratum
  int component_count = 0;
  // closed strata are exactly the in-degree-0 nodes; irreducible components
  // of AS_g are the out-degree-0 (equivalently codimension-0) strata
  std::vector<bool> closed;
  std::vector<bool> irreducible;
  bool certain = true;             // all edge decisions within budget
  std::vector<std::string> notes;  // loud flags: cap artifacts, cross-check
                                   // disagreements with the closure criteria
  bool connected() const { return component_count <= 1; }
};

// Builds C_d for AS_g: every ordered stratum pair is tested with
// deformation_exists (not just covering pairs).  Closed and irreducible
// markings are computed from the edge set and cross-checked against the
// independent criteria (sub-multiset exactness; all parts <= p) -- any
// disagreement lands in notes rather than being papered over.  Throws
// std::invalid_argument when AS_g is empty.
ModuliGraph build_graph(uint32_t p, long long g, const FormConfig& cfg = {});

struct GenusReport {
  long long g = 0;
  bool nonempty = false;  // 2g/(p-1) integral
  int d = -1;
  int strata = 0;
  int components = 0;
  bool connected = false;
  bool certain = true;
  std::vector<std::string> closed_strata;  // formatted partitions
  std::vector<std::string> irreducible_components;
  std::string witness_note;  // closed-stratum proof witness verification for
                             // 4 <= d+2 <= 2p-2 ({3,2,...,2} odd, {2,...,2}
                             // even); empty outside that band
};

// Per-genus connectivity over an inclusive range.
std::vector<GenusReport> connectivity_report(uint32_t p, long long g_lo,
                                             long long g_hi,
                                             const FormConfig& cfg = {});

// DOT export: nodes labeled with the partition and its dimension, closed
// strata double-circled, weak components colored.  With transitive_reduce,
// edges implied by transitivity are dropped for readability.
std::string moduli_to_dot(const ModuliGraph& G, bool transitive_reduce = false);

// {"p":..,"g":..,"connected":..,"components":[["{9}",...],...],
//  "edges":[["{9}","{5,4}"],...]} plus dimensions, markings and notes
std::string moduli_to_json(const ModuliGraph& G);

}  // namespace hurwitz
