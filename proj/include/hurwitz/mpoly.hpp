#pragma once

// Sparse multivariate polynomials over a prime field F_p, with just enough
// Groebner machinery to settle unit-ideal questions: graded reverse
// lexicographic ordering, normal forms, and Buchberger's algorithm with the
// product and chain criteria behind an effort cap.  The instances built by
// this library stay tiny (a handful of variables, degrees in the tens), so
// the representation favours clarity: dense exponent vectors, term lists
// kept sorted descending.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hurwitz {

using ExpVec = std::vector<uint16_t>;

int total_degree(const ExpVec& e);

// three-way graded reverse lexicographic comparison: negative when a is the
// smaller monomial, positive when larger.  Higher total degree wins; on ties
// the vectors are scanned from the last variable backwards and the one with
// the SMALLER exponent at the first difference is the LARGER monomial.
int degrevlex_cmp(const ExpVec& a, const ExpVec& b);

struct MTerm {
  ExpVec e;
  uint32_t c;  // residue 1..p-1; normalized polynomials store no zero terms
};

class MPoly {
 public:
  MPoly() = default;  // zero over an unspecified context; assignment target
  MPoly(uint32_t p, int nvars) : p_(p), n_(nvars) {}
  static MPoly constant(uint32_t p, int nvars, long long c);
  static MPoly variable(uint32_t p, int nvars, int i);
  static MPoly monomial(uint32_t p, ExpVec e, uint32_t c);

  uint32_t p() const { return p_; }
  int nvars() const { return n_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || total_degree(t_.front().e) == 0; }
  int degree() const { return t_.empty() ? -1 : total_degree(t_.front().e); }

  // terms in strictly descending degrevlex order; lead() requires nonzero
  const std::vector<MTerm>& terms() const { return t_; }
  const MTerm& lead() const { return t_.front(); }

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly scaled(uint32_t c) const;
  MPoly monic() const;
  bool operator==(const MPoly& o) const { return p_ == o.p_ && n_ == o.n_ && eq_terms(o); }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  // f - c * x^shift * g, the single division step; shift has nvars entries
  MPoly reduce_by(const MPoly& g, const ExpVec& shift, uint32_t c) const;
  // everything but the leading term
  MPoly tail() const;

  std::string str(const std::vector<std::string>& names) const;

 private:
  uint32_t p_ = 0;
  int n_ = 0;
  std::vector<MTerm> t_;
  bool eq_terms(const MPoly& o) const;
  void from_unsorted(std::vector<MTerm> raw);
};

// remainder of f under full division by the polynomials in G (every term of
// the result is reducible by no leading monomial of G)
MPoly normal_form(const MPoly& f, const std::vector<MPoly>& G);

struct EffortCap : std::runtime_error {
  EffortCap(uint64_t pairs, size_t basis)
      : std::runtime_error("Groebner effort cap exceeded after " +
                           std::to_string(pairs) + " S-pairs (basis size " +
                           std::to_string(basis) + ")"),
        pairs_processed(pairs),
        basis_size(basis) {}
  uint64_t pairs_processed;
  size_t basis_size;
};

// Reduced Groebner basis of the ideal generated by `gens`, in degrevlex
// order: monic, pairwise tail-reduced, sorted by leading monomial
// descending.  The zero ideal comes back empty, the unit ideal as the single
// constant {1} (detected early).  Throws EffortCap once more than pair_cap
// S-polynomials have been reduced.
std::vector<MPoly> groebner_basis(std::vector<MPoly> gens, uint64_t pair_cap);

inline bool is_unit_ideal(const std::vector<MPoly>& reduced_basis) {
  return reduced_basis.size() == 1 && reduced_basis.front().is_constant() &&
         !reduced_basis.front().is_zero();
}

}  // namespace hurwitz
