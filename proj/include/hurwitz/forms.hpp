#pragma once

// Existence of exact differential forms dx / prod_i (x - P_i)^{h_i} with
// prescribed pole orders ("type"), and the chain criterion for local
// deformations [h] -> [h_1, ..., h_r]: normalization modulo p-th powers,
// closed-form families, a Groebner unit-ideal decider, brute-force witness
// search over small extension fields, and reachability over the coarsening
// lattice of a type.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/fq.hpp"
#include "hurwitz/ratfunc.hpp"

namespace hurwitz {

struct FormType {
  uint32_t p = 0;
  std::vector<int> entries;  // descending; each >= 2 and != 1 mod p
};

// validates (p prime, entries nonempty, each >= 2 and != 1 mod p) and sorts
// the entries descending
FormType make_form_type(uint32_t p, std::vector<int> entries);

// "{9}", "{5,4}", "{3,2,2,2}" -- shared by notes, JSON and the CLI
std::string format_type(const std::vector<int>& entries);

// residues mod p with the p-divisible entries dropped: a factor
// (x-P)^{pk} is a p-th power and multiplying by p-th powers preserves
// exactness both ways, so only the residues matter.  The result's entries
// lie in {2,...,p-1}; an empty result means "exact for trivial reasons".
FormType normalize_type(const FormType& t);

enum class Verdict { yes, no, undecided };

struct FormWitness {
  const Fq* field = nullptr;  // F_{p^m} housing the pole positions
  std::vector<FqEl> poles;    // aligned with the type's entries (descending);
                              // left empty when the poles' splitting field is
                              // beyond the field registry's size cap
  RatFunc omega;              // 1 / prod (x - P_i)^{h_i}, is_exact-verified
};

struct FormDecision {
  Verdict verdict = Verdict::undecided;
  std::optional<FormWitness> witness;  // on yes, when a small field suffices
  std::string method;  // rung of the decision ladder that fired: trivial |
                       // single | bound | pair-law | family:... | groebner |
                       // brute-force | capped
  std::string note;    // one-line explanation (obstruction note on no)
};

struct FormConfig {
  int m_max = 3;                  // witness search explores F_{p^m}, m <= m_max
  uint64_t pair_cap = 1'000'000;  // Groebner S-pair budget
};

// Does some placement of pairwise-distinct poles over the algebraic closure
// make dx / prod (x - P_i)^{h_i} exact?  The type is normalized internally;
// the decision ladder runs: trivial (empty normalization) -> single pole ->
// necessary bound (sum of reduced entries >= p + n) -> the two-pole law
// (exact iff the sum reaches p + 2) -> closed-form families -> Groebner
// unit-ideal test, with a brute-force fallback if the effort cap trips.
// Witnesses are materialized for the ORIGINAL entries (p-th-power factors
// reattached at fresh poles); a yes with no witness within F_{p^m}, m <=
// m_max, is still a yes, with the note saying so.  Results are memoized.
FormDecision exact_form_exists(const FormType& t, const FormConfig& cfg = {});

// The paper's ideal-membership criterion, on its own: with P_1 = 0, P_2 = 1
// and P_3..P_n free, form the coefficients a_j of prod (x - P_i)^{p - h_i}
// for j == -1 mod p, adjoin the distinctness saturation
// 1 - s * prod_{3<=i<j}(P_i - P_j) * prod_{i>=3} P_i(P_i - 1), and run
// Buchberger over F_p.  True (a form exists) iff the ideal is not the unit
// ideal.  Expects a normalized type (normalizes defensively); throws
// EffortCap from the engine when pair_cap trips.
bool groebner_unit_test(const FormType& t, uint64_t pair_cap = 1'000'000);

// Deterministic exhaustive witness search for the NORMALIZED type: P_1 = 0,
// P_2 = 1, the remaining poles range over F_{p^m} \ {0,1} for m = 1, 2, ...,
// m_max in packed order, ascending within runs of equal entries (symmetry
// pruning), skipping tuples that lie in a proper subfield already searched.
// Returns the first witness or nothing.
std::optional<FormWitness> brute_force_witness(const FormType& t, int m_max);

// One split step of a chain: `part` (an entry of `before`) is replaced by
// the entries of `split`, justified by an exact form of type `split`.
struct ChainStep {
  std::vector<int> before;  // the partition this step starts from, descending
  int part;                 // the entry being split
  std::vector<int> split;   // its replacement entries, descending
  FormDecision form;        // verdict yes; witness of type `split` when found
};

struct ChainWitness {
  std::vector<ChainStep> steps;  // empty when target is already the singleton
};

// Local deformability [h] -> [target]: is there a chain of partitions
// {h} = e_0 < e_1 < ... < e_m = target, each step splitting exactly one part
// into pieces that admit an exact form of that type?  Requires h equal to
// the sum of target's entries and h != 1 mod p.  The search walks the
// coarsening lattice of target depth-first, memoized per sub-multiset;
// splits are tried fewest-pieces-first, so returned chains are greedy, not
// minimal -- any witness chain is a valid certificate.
std::optional<ChainWitness> chain_exists(int h, const FormType& target,
                                         const FormConfig& cfg = {});

// chain_exists plus an honesty bit: `certain` is false when no chain was
// found but some split decision came back undecided (effort caps), so the
// absence might be an artifact of the configured budgets.
struct ChainProbe {
  std::optional<ChainWitness> witness;
  bool certain = true;
};
ChainProbe chain_probe(int h, const FormType& target,
                       const FormConfig& cfg = {});

// Unordered partitions of the multiset `elems` (descending) into nonempty
// blocks, each block descending, blocks within a partition sorted descending
// lexicographically, partitions ordered by block count ascending then
// lexicographically.  Includes the one-block partition.  Shared by the chain
// search and the moduli block assignments.
std::vector<std::vector<std::vector<int>>> multiset_partitions(
    std::vector<int> elems);

}  // namespace hurwitz
