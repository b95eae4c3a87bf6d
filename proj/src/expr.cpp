#include "hurwitz/expr.hpp"

#include <cctype>
#include <numeric>

namespace hurwitz {
namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  Expr out;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++pos;
      return true;
    }
    return false;
  }
  int add(ExprNode n) {
    out.nodes.push_back(std::move(n));
    return (int)out.nodes.size() - 1;
  }

  int parse_expr() {
    int lhs = parse_term();
    while (true) {
      if (accept('+')) {
        int rhs = parse_term();
        lhs = add({ExprNode::Kind::Add, 0, "", lhs, rhs});
      } else if (accept('-')) {
        int rhs = parse_term();
        lhs = add({ExprNode::Kind::Sub, 0, "", lhs, rhs});
      } else {
        return lhs;
      }
    }
  }

  int parse_term() {
    int lhs = parse_factor();
    while (true) {
      if (accept('*')) {
        int rhs = parse_factor();
        lhs = add({ExprNode::Kind::Mul, 0, "", lhs, rhs});
      } else if (accept('/')) {
        int rhs = parse_factor();
        lhs = add({ExprNode::Kind::Div, 0, "", lhs, rhs});
      } else {
        return lhs;
      }
    }
  }

  int parse_factor() {
    if (accept('-')) {
      int inner = parse_factor();
      return add({ExprNode::Kind::Neg, 0, "", inner, -1});
    }
    int base = parse_base();
    if (accept('^')) {
      long long e = parse_int_literal(true);
      return add({ExprNode::Kind::Pow, e, "", base, -1});
    }
    return base;
  }

  long long parse_int_literal(bool allow_sign) {
    skip_ws();
    bool neg = false;
    bool parens = false;
    if (allow_sign && pos < s.size() && s[pos] == '(') {
      parens = true;
      ++pos;
      skip_ws();
    }
    if (allow_sign && pos < s.size() && s[pos] == '-') {
      neg = true;
      ++pos;
      skip_ws();
    }
    if (pos >= s.size() || !std::isdigit((unsigned char)s[pos]))
      throw ParseError("expected integer", pos);
    long long v = 0;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
      v = v * 10 + (s[pos] - '0');
      if (v > (1LL << 40)) throw ParseError("integer literal too large", pos);
      ++pos;
    }
    if (parens && !accept(')')) throw ParseError("expected ')'", pos);
    return neg ? -v : v;
  }

  int parse_base() {
    skip_ws();
    if (pos >= s.size()) throw ParseError("unexpected end of expression", pos);
    char c = s[pos];
    if (std::isdigit((unsigned char)c)) {
      long long v = parse_int_literal(false);
      return add({ExprNode::Kind::Number, v, "", -1, -1});
    }
    if (std::isalpha((unsigned char)c)) {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      return add({ExprNode::Kind::Variable, 0, name, -1, -1});
    }
    if (c == '(') {
      ++pos;
      int inner = parse_expr();
      if (!accept(')')) throw ParseError("expected ')'", pos);
      return inner;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }
};

}  // namespace

Expr parse_expr(const std::string& text) {
  Parser p(text);
  p.out.root = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size())
    throw ParseError("trailing input", p.pos);
  return p.out;
}

namespace {

RatFunc eval_uni_node(const Expr& e, int idx, const Fq& k) {
  const ExprNode& n = e.nodes[(size_t)idx];
  switch (n.kind) {
    case ExprNode::Kind::Number:
      return RatFunc::constant(k, k.from_int(n.value));
    case ExprNode::Kind::Variable:
      if (n.name == "x" || n.name == "X") return RatFunc::x(k);
      if (n.name == "a") {
        if (k.m() < 2)
          throw ParseError("generator 'a' needs an extension field (m >= 2)", 0);
        return RatFunc::constant(k, k.gen());
      }
      if (n.name == "t")
        throw ParseError("variable 't' is not allowed in a univariate expression", 0);
      throw ParseError("unknown variable '" + n.name + "'", 0);
    case ExprNode::Kind::Add:
      return eval_uni_node(e, n.lhs, k) + eval_uni_node(e, n.rhs, k);
    case ExprNode::Kind::Sub:
      return eval_uni_node(e, n.lhs, k) - eval_uni_node(e, n.rhs, k);
    case ExprNode::Kind::Mul:
      return eval_uni_node(e, n.lhs, k) * eval_uni_node(e, n.rhs, k);
    case ExprNode::Kind::Div:
      return eval_uni_node(e, n.lhs, k) / eval_uni_node(e, n.rhs, k);
    case ExprNode::Kind::Pow:
      return eval_uni_node(e, n.lhs, k).pow(n.value);
    case ExprNode::Kind::Neg:
      return -eval_uni_node(e, n.lhs, k);
  }
  throw std::logic_error("eval: bad node");
}

std::string format_coeff(const Fq& k, FqEl c, bool product_follows) {
  std::string s = k.to_string(c);
  bool composite = s.find('+') != std::string::npos || s.find('*') != std::string::npos;
  if (composite && product_follows) return "(" + s + ")";
  return s;
}

}  // namespace

RatFunc eval_univariate(const Expr& e, const Fq& k) {
  return eval_uni_node(e, e.root, k);
}
RatFunc eval_univariate(const std::string& text, const Fq& k) {
  return eval_univariate(parse_expr(text), k);
}

std::string format_poly(const Poly& f, const std::string& var) {
  if (f.is_zero()) return "0";
  const Fq& k = f.field();
  std::string s;
  for (int i = f.deg(); i >= 0; --i) {
    FqEl c = f.coeff(i);
    if (c == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += format_coeff(k, c, false);
    } else {
      if (c != 1) s += format_coeff(k, c, true) + "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

namespace {

// one monic factor raised to a power, in canonical display form
std::string format_factor(const Poly& f, int e, const std::string& var) {
  const Fq& k = f.field();
  std::string base;
  bool needs_parens;
  if (f.deg() == 1 && f.coeff(0) == 0) {
    base = var;
    needs_parens = false;
  } else if (f.deg() == 1) {
    FqEl root = k.neg(f.coeff(0));
    std::string r = k.to_string(root);
    bool comp = r.find('+') != std::string::npos || r.find('*') != std::string::npos;
    base = var + "-" + (comp ? "(" + r + ")" : r);
    needs_parens = true;
  } else {
    base = format_poly(f, var);
    needs_parens = true;
  }
  if (e == 1) return needs_parens ? "(" + base + ")" : base;
  return (needs_parens ? "(" + base + ")" : base) + "^" + std::to_string(e);
}

}  // namespace

std::string format_ratfunc(const RatFunc& f, const std::string& var) {
  if (f.is_zero()) return "0";
  const Fq& k = f.field();
  std::string num;
  if (f.num().is_constant()) {
    num = format_coeff(k, f.num().coeff(0), false);
    if (num.find('+') != std::string::npos && !f.den().is_constant())
      num = "(" + num + ")";
  } else {
    num = format_poly(f.num(), var);
    if (!f.den().is_constant()) num = "(" + num + ")";
  }
  if (f.den().is_constant()) return num;

  auto fz = f.den().factor();
  std::string den;
  for (size_t i = 0; i < fz.factors.size(); ++i) {
    if (i) den += "*";
    den += format_factor(fz.factors[i].first, fz.factors[i].second, var);
  }
  // a single factor is already safely composable after '/' (its base is
  // parenthesized unless it is a pure power of the variable); a product needs
  // wrapping parentheses
  if (fz.factors.size() > 1) den = "(" + den + ")";
  return num + "/" + den;
}

std::string format_affine_in_s(const Rat& slope, const Rat& intercept) {
  if (slope.is_zero()) return intercept.str();
  long long l = std::lcm(slope.den(), intercept.den());
  long long a = (slope * Rat(l)).as_integer();
  long long b = (intercept * Rat(l)).as_integer();
  std::string core;
  if (a == 1)
    core = "s";
  else if (a == -1)
    core = "-s";
  else
    core = std::to_string(a) + "s";
  if (b > 0) core += "+" + std::to_string(b);
  if (b < 0) core += std::to_string(b);
  if (l == 1) return core;
  if (b == 0) return core + "/" + std::to_string(l);
  return "(" + core + ")/" + std::to_string(l);
}

}  // namespace hurwitz
