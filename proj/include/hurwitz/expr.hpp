#pragma once

// Expression grammar shared by the CLI and the test fixtures:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' exponent)?
//   base   := integer | variable | '(' expr ')'
// Variables: x or X (the function-field coordinate), t (the base deformation
// parameter, only in bivariate context), a (the canonical generator of
// F_{p^m}, m >= 2).  Exponents are integers, negatives allowed.
//
// Printing is deterministic and re-parses to the same object: univariate
// rational functions print with the denominator in canonical factored form
// (sorted irreducible factors, linear factors as x or x-R), everything else
// expanded with terms in descending degree and coefficients as canonical
// residues.

#include <string>
#include <vector>

#include "hurwitz/rational.hpp"
#include "hurwitz/ratfunc.hpp"

namespace hurwitz {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
  size_t position;
};

struct ExprNode {
  enum class Kind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg };
  Kind kind;
  long long value = 0;    // Number, or exponent for Pow
  std::string name;       // Variable
  int lhs = -1, rhs = -1; // child indices
};

struct Expr {
  std::vector<ExprNode> nodes;
  int root = -1;
};

Expr parse_expr(const std::string& text);

// evaluate with x/X as the coordinate; t is rejected, a is the generator
RatFunc eval_univariate(const Expr& e, const Fq& k);
RatFunc eval_univariate(const std::string& text, const Fq& k);

// --- formatting ---

// expanded polynomial, descending degree ("x^2+4*x+2", "0", "(a+2)*x")
std::string format_poly(const Poly& f, const std::string& var);
// canonical factored rational function ("1/(x^4*(x-1)^3)", "x+3", "2/x^5")
std::string format_ratfunc(const RatFunc& f, const std::string& var = "x");

// affine function of the parameter s with rational coefficients, printed in
// the house style: "0", "17/5", "s/2", "(3s-2)/2", "(s+2)/2", "2s"
std::string format_affine_in_s(const Rat& slope, const Rat& intercept);

}  // namespace hurwitz
