#include "hurwitz/biv.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hurwitz {

namespace {

int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

}  // namespace

// ---------------------------------------------------------------------------
// BivPoly

BivPoly BivPoly::lift_x(const Poly& f) {
  std::vector<Poly> c;
  c.reserve((size_t)f.deg() + 1);
  for (int i = 0; i <= f.deg(); ++i) c.push_back(Poly::constant(f.field(), f.coeff(i)));
  return BivPoly(f.field(), std::move(c));
}

const Fq& BivPoly::field() const {
  if (!k_) throw std::logic_error("BivPoly: uninitialized");
  return *k_;
}

const Poly& BivPoly::coeff(int i) const {
  if (i >= 0 && i < (int)c_.size()) return c_[i];
  thread_local Poly zero;
  zero = Poly(field());
  return zero;
}

int BivPoly::deg_tau() const {
  int d = -1;
  for (const Poly& c : c_) d = std::max(d, c.deg());
  return d;
}

int BivPoly::ord_tau() const {
  int o = -1;
  for (const Poly& c : c_) {
    if (c.is_zero()) continue;
    int oc = c.ord0();
    o = (o < 0) ? oc : std::min(o, oc);
  }
  return o;
}

BivPoly BivPoly::operator+(const BivPoly& o) const {
  std::vector<Poly> c(std::max(c_.size(), o.c_.size()), Poly(field()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < c_.size()) c[i] = c[i] + c_[i];
    if (i < o.c_.size()) c[i] = c[i] + o.c_[i];
  }
  return BivPoly(field(), std::move(c));
}

BivPoly BivPoly::operator-(const BivPoly& o) const { return *this + (-o); }

BivPoly BivPoly::operator-() const {
  std::vector<Poly> c = c_;
  for (Poly& x : c) x = -x;
  return BivPoly(field(), std::move(c));
}

BivPoly BivPoly::operator*(const BivPoly& o) const {
  if (is_zero() || o.is_zero()) return BivPoly(field());
  std::vector<Poly> c(c_.size() + o.c_.size() - 1, Poly(field()));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] = c[i + j] + c_[i] * o.c_[j];
  return BivPoly(field(), std::move(c));
}

BivPoly BivPoly::scaled(const Poly& tau_poly) const {
  std::vector<Poly> c = c_;
  for (Poly& x : c) x = x * tau_poly;
  return BivPoly(field(), std::move(c));
}

BivPoly BivPoly::pow(long long e) const {
  if (e < 0) throw std::invalid_argument("BivPoly::pow: negative exponent");
  BivPoly r = BivPoly::constant(field(), Poly::constant(field(), 1));
  BivPoly b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

BivPoly BivPoly::subst_x_plus(const Poly& z) const {
  // Horner: f(X + z) built from the top coefficient down
  BivPoly r(field());
  BivPoly shift = BivPoly(field(), {z, Poly::constant(field(), 1)});
  for (int i = deg_x(); i >= 0; --i)
    r = r * shift + BivPoly::constant(field(), c_[(size_t)i]);
  return r;
}

BivPoly BivPoly::scale_x(const Poly& u) const {
  std::vector<Poly> c = c_;
  Poly up = Poly::constant(field(), 1);
  for (size_t i = 0; i < c.size(); ++i) {
    c[i] = c[i] * up;
    up = up * u;
  }
  return BivPoly(field(), std::move(c));
}

BivPoly BivPoly::inflate_tau(int e) const {
  std::vector<Poly> c = c_;
  for (Poly& x : c) x = x.inflate(e);
  return BivPoly(field(), std::move(c));
}

BivPoly BivPoly::shift_tau_down(int e) const {
  if (e == 0) return *this;
  std::vector<Poly> c = c_;
  Poly te = Poly::x(field()).pow(e);
  for (Poly& x : c) {
    if (x.is_zero()) continue;
    auto [q, r] = x.divrem(te);
    if (!r.is_zero()) throw std::logic_error("BivPoly::shift_tau_down: not divisible");
    x = q;
  }
  return BivPoly(field(), std::move(c));
}

Poly BivPoly::at_tau_zero() const {
  std::vector<FqEl> c;
  c.reserve(c_.size());
  for (const Poly& x : c_) c.push_back(x.coeff(0));
  return Poly(field(), std::move(c));
}

Poly BivPoly::eval_x(const Poly& z) const {
  Poly r(field());
  for (int i = deg_x(); i >= 0; --i) r = r * z + c_[(size_t)i];
  return r;
}

BivPoly BivPoly::synthetic_quotient(const Poly& z) const {
  if (is_zero()) return *this;
  std::vector<Poly> q((size_t)deg_x(), Poly(field()));
  Poly carry = c_.back();
  for (int i = deg_x() - 1; i >= 0; --i) {
    q[(size_t)i] = carry;
    carry = c_[(size_t)i] + carry * z;
  }
  if (!carry.is_zero())
    throw std::logic_error("BivPoly::synthetic_quotient: z is not a root");
  return BivPoly(field(), std::move(q));
}

BivPoly BivPoly::derivative_x() const {
  if (c_.size() <= 1) return BivPoly(field());
  std::vector<Poly> c(c_.size() - 1, Poly(field()));
  for (size_t i = 1; i < c_.size(); ++i)
    c[i - 1] = c_[i].scaled(field().from_int((long long)i));
  return BivPoly(field(), std::move(c));
}

Poly BivPoly::content_tau() const {
  Poly g(field());
  for (const Poly& c : c_) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : Poly::gcd(g, c);
    if (g.is_constant()) break;
  }
  return g.is_zero() ? g : g.monic();
}

BivPoly BivPoly::gcd(const BivPoly& a, const BivPoly& b) {
  if (a.is_zero() && b.is_zero()) return a;
  if (a.is_zero() || b.is_zero()) {
    BivPoly n = a.is_zero() ? b : a;
    FqEl u = n.coeff(n.deg_x()).lc();
    if (u != 1) n = n.scaled(Poly::constant(n.field(), n.field().inv(u)));
    return n;
  }
  const Fq& k = a.field();
  Poly cont = Poly::gcd(a.content_tau(), b.content_tau());
  auto primitive = [&k](const BivPoly& f) {
    Poly c = f.content_tau();
    if (c.is_zero() || c.is_constant()) return f;
    std::vector<Poly> out;
    out.reserve(f.coeffs().size());
    for (const Poly& q : f.coeffs()) out.push_back(q.divrem(c).first);
    return BivPoly(k, std::move(out));
  };
  auto trim = [](std::vector<Poly>& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
  };
  // Primitive pseudo-remainder sequence: fraction-free, so intermediate
  // tau-degrees stay near the resultant bound instead of doubling at every
  // Euclidean step the way reduced-fraction coefficients do.
  BivPoly pa = primitive(a), pb = primitive(b);
  if (pa.deg_x() < pb.deg_x()) std::swap(pa, pb);
  while (!pb.is_zero()) {
    if (pb.deg_x() == 0) {
      pa = BivPoly::constant(k, Poly::constant(k, 1));
      break;
    }
    std::vector<Poly> r = pa.coeffs();
    const std::vector<Poly>& d = pb.coeffs();
    const Poly& lb = d.back();
    trim(r);
    while (r.size() >= d.size()) {
      const Poly la = r.back();
      const size_t shift = r.size() - d.size();
      for (Poly& q : r) q = q * lb;
      for (size_t i = 0; i < d.size(); ++i) r[shift + i] = r[shift + i] - la * d[i];
      r.pop_back();  // the leading terms cancel exactly
      trim(r);
    }
    pa = std::move(pb);
    pb = primitive(BivPoly(k, std::move(r)));
  }
  BivPoly out = pa.scaled(cont);
  // canonical unit: leading X-coefficient tau-monic
  const Poly& lead = out.coeff(out.deg_x());
  FqEl u = lead.lc();
  if (u != 1) out = out.scaled(Poly::constant(k, k.inv(u)));
  return out;
}

BivPoly BivPoly::div_exact(const BivPoly& a, const BivPoly& b) {
  if (b.is_zero()) throw std::domain_error("BivPoly::div_exact: division by zero");
  if (a.is_zero()) return a;
  const Fq& k = a.field();
  auto trim = [](std::vector<Poly>& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
  };
  // Strip the tau-content of b first; afterwards every leading-coefficient
  // division below is exact whenever the quotient is polynomial at all, so the
  // whole computation stays inside F_q[tau][X].
  const Poly cb = b.content_tau();
  auto divided = [&](const BivPoly& f, const char* what) {
    std::vector<Poly> out;
    out.reserve(f.coeffs().size());
    for (const Poly& c : f.coeffs()) {
      auto qr = c.divrem(cb);
      if (!qr.second.is_zero()) throw std::logic_error(what);
      out.push_back(std::move(qr.first));
    }
    trim(out);
    return out;
  };
  std::vector<Poly> rem = divided(a, "BivPoly::div_exact: not divisible");
  std::vector<Poly> bb = divided(b, "BivPoly::div_exact: content");
  const Poly& lb = bb.back();
  std::vector<Poly> q(rem.size() >= bb.size() ? rem.size() - bb.size() + 1 : 0,
                      Poly(k));
  while (rem.size() >= bb.size()) {
    auto qr = rem.back().divrem(lb);
    if (!qr.second.is_zero())
      throw std::logic_error("BivPoly::div_exact: not divisible");
    const size_t shift = rem.size() - bb.size();
    for (size_t i = 0; i + 1 < bb.size(); ++i)
      rem[shift + i] = rem[shift + i] - qr.first * bb[i];
    rem.pop_back();  // the leading terms cancel exactly
    trim(rem);
    q[shift] = std::move(qr.first);
  }
  if (!rem.empty()) throw std::logic_error("BivPoly::div_exact: not divisible");
  return BivPoly(k, std::move(q));
}

// ---------------------------------------------------------------------------
// BivRat

BivRat::BivRat(BivPoly num)
    : num_(std::move(num)),
      den_(BivPoly::constant(num_.field(), Poly::constant(num_.field(), 1))),
      ram_(1) {}

BivRat::BivRat(BivPoly num, BivPoly den, int ram)
    : num_(std::move(num)), den_(std::move(den)), ram_(ram) {
  if (ram_ < 1) throw std::invalid_argument("BivRat: ram must be positive");
  normalize();
}

BivRat BivRat::tau_power(const Fq& k, int e, int ram) {
  if (e < 0) throw std::invalid_argument("BivRat::tau_power: negative exponent");
  return BivRat(BivPoly::constant(k, Poly::x(k).pow(e)),
                BivPoly::constant(k, Poly::constant(k, 1)), ram);
}

void BivRat::normalize() {
  if (den_.is_zero()) throw std::domain_error("BivRat: zero denominator");
  if (num_.is_zero()) {
    den_ = BivPoly::constant(den_.field(), Poly::constant(den_.field(), 1));
    ram_ = 1;
    return;
  }
  BivPoly g = BivPoly::gcd(num_, den_);
  bool nontrivial_gcd = g.deg_x() > 0 || g.deg_tau() > 0;
  if (nontrivial_gcd) {
    num_ = BivPoly::div_exact(num_, g);
    den_ = BivPoly::div_exact(den_, g);
  }
  // unit normalization: denominator's leading X-coefficient tau-monic
  const Fq& k = num_.field();
  FqEl u = den_.coeff(den_.deg_x()).lc();
  if (u != 1) {
    Poly s = Poly::constant(k, k.inv(u));
    num_ = num_.scaled(s);
    den_ = den_.scaled(s);
  }
  // reduce ramification when both sides live in a coarser tau-lattice:
  // exponents all divisible by d | ram with d > 1 can be deflated.  Keeping
  // ram minimal keeps later lcm promotions small.
  auto exponent_gcd = [](const BivPoly& f, int g0) {
    int g = g0;
    for (const Poly& c : f.coeffs())
      for (int i = 0; i <= c.deg() && g != 1; ++i)
        if (c.coeff(i) != 0) g = std::gcd(g, i);
    return g;
  };
  int d = exponent_gcd(num_, exponent_gcd(den_, ram_));
  d = std::gcd(d, ram_);
  if (d > 1) {
    auto deflate = [&](const BivPoly& f) {
      std::vector<Poly> cs;
      cs.reserve(f.coeffs().size());
      for (const Poly& c : f.coeffs()) {
        std::vector<FqEl> v;
        v.reserve((size_t)(c.deg() / d) + 1);
        for (int i = 0; i <= c.deg(); i += d) v.push_back(c.coeff(i));
        cs.push_back(Poly(f.field(), std::move(v)));
      }
      return BivPoly(f.field(), std::move(cs));
    };
    num_ = deflate(num_);
    den_ = deflate(den_);
    ram_ /= d;
  }
}

BivRat BivRat::with_ram(int new_ram) const {
  if (new_ram % ram_ != 0)
    throw std::invalid_argument("BivRat::with_ram: not a multiple of current ram");
  if (new_ram == ram_) return *this;
  int e = new_ram / ram_;
  BivRat r;
  r.num_ = num_.inflate_tau(e);
  r.den_ = den_.inflate_tau(e);
  r.ram_ = new_ram;
  return r;
}

BivRat BivRat::operator+(const BivRat& o) const {
  int m = lcm_int(ram_, o.ram_);
  BivRat a = with_ram(m), b = o.with_ram(m);
  return BivRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, m);
}

BivRat BivRat::operator-(const BivRat& o) const { return *this + (-o); }

BivRat BivRat::operator-() const {
  BivRat r = *this;
  r.num_ = -r.num_;
  return r;
}

BivRat BivRat::operator*(const BivRat& o) const {
  int m = lcm_int(ram_, o.ram_);
  BivRat a = with_ram(m), b = o.with_ram(m);
  return BivRat(a.num_ * b.num_, a.den_ * b.den_, m);
}

BivRat BivRat::operator/(const BivRat& o) const {
  if (o.is_zero()) throw std::domain_error("BivRat: division by zero");
  int m = lcm_int(ram_, o.ram_);
  BivRat a = with_ram(m), b = o.with_ram(m);
  return BivRat(a.num_ * b.den_, a.den_ * b.num_, m);
}

BivRat BivRat::pow(long long e) const {
  if (e < 0) {
    if (is_zero()) throw std::domain_error("BivRat::pow: zero to negative power");
    BivRat inv;
    inv.num_ = den_;
    inv.den_ = num_;
    inv.ram_ = ram_;
    inv.normalize();
    return inv.pow(-e);
  }
  BivRat r = BivRat::constant(field(), 1);
  BivRat b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool BivRat::operator==(const BivRat& o) const {
  int m = lcm_int(ram_, o.ram_);
  BivRat a = with_ram(m), b = o.with_ram(m);
  return a.num_ == b.num_ && a.den_ == b.den_;
}

BivRat BivRat::artin_schreier_image() const {
  return pow(field().p()) - *this;
}

// ---------------------------------------------------------------------------
// expression evaluation

namespace {

BivRat eval_biv_node(const Expr& e, int idx, const Fq& k) {
  const ExprNode& n = e.nodes[(size_t)idx];
  switch (n.kind) {
    case ExprNode::Kind::Number:
      return BivRat::constant(k, k.from_int(n.value));
    case ExprNode::Kind::Variable:
      if (n.name == "x" || n.name == "X") return BivRat::X(k);
      if (n.name == "t") return BivRat::tau_power(k, 1, 1);
      if (n.name == "a") {
        if (k.m() < 2)
          throw std::invalid_argument("generator 'a' requires an extension field");
        return BivRat::constant(k, k.gen());
      }
      throw std::invalid_argument("unknown variable '" + n.name + "'");
    case ExprNode::Kind::Neg:
      return -eval_biv_node(e, n.lhs, k);
    case ExprNode::Kind::Add:
      return eval_biv_node(e, n.lhs, k) + eval_biv_node(e, n.rhs, k);
    case ExprNode::Kind::Sub:
      return eval_biv_node(e, n.lhs, k) - eval_biv_node(e, n.rhs, k);
    case ExprNode::Kind::Mul:
      return eval_biv_node(e, n.lhs, k) * eval_biv_node(e, n.rhs, k);
    case ExprNode::Kind::Div:
      return eval_biv_node(e, n.lhs, k) / eval_biv_node(e, n.rhs, k);
    case ExprNode::Kind::Pow:
      return eval_biv_node(e, n.lhs, k).pow(n.value);
  }
  throw std::logic_error("eval_bivariate: unhandled node");
}

}  // namespace

BivRat eval_bivariate(const Expr& e, const Fq& k) {
  return eval_biv_node(e, e.root, k);
}

BivRat eval_bivariate(const std::string& text, const Fq& k) {
  return eval_bivariate(parse_expr(text), k);
}

// ---------------------------------------------------------------------------
// formatting

namespace {

void append_tau_exponent(std::ostream& os, int e, int ram) {
  if (e == 0) return;
  os << "*t";
  if (e == ram) return;
  if (e % ram == 0)
    os << "^" << e / ram;
  else
    os << "^(" << e << "/" << ram << ")";
}

}  // namespace

std::string format_bivpoly(const BivPoly& f, int ram) {
  if (f.is_zero()) return "0";
  const Fq& k = f.field();
  std::ostringstream os;
  bool first = true;
  for (int i = f.deg_x(); i >= 0; --i) {
    const Poly& c = f.coeff(i);
    for (int j = c.deg(); j >= 0; --j) {
      if (c.coeff(j) == 0) continue;
      if (!first) os << "+";
      first = false;
      std::string cs = k.to_string(c.coeff(j));
      bool coeff_shown = false;
      if (cs != "1" || (i == 0 && j == 0)) {
        if (cs.find_first_of("+-") != std::string::npos && cs.size() > 1)
          os << "(" << cs << ")";
        else
          os << cs;
        coeff_shown = true;
      }
      if (i > 0) {
        if (coeff_shown) os << "*";
        os << "X";
        if (i > 1) os << "^" << i;
        append_tau_exponent(os, j, ram);
      } else if (j > 0) {
        std::string body;
        {
          std::ostringstream ts;
          append_tau_exponent(ts, j, ram);
          body = ts.str();
        }
        if (coeff_shown)
          os << body;  // "*t..." already includes the separator
        else
          os << body.substr(1);  // drop the leading '*'
      }
    }
  }
  return os.str();
}

std::string format_bivrat(const BivRat& f) {
  if (f.is_zero()) return "0";
  std::string n = format_bivpoly(f.num(), f.ram());
  bool den_is_one = f.den().deg_x() == 0 && f.den().coeff(0).is_constant() &&
                    f.den().coeff(0).coeff(0) == 1;
  if (den_is_one) return n;
  std::string d = format_bivpoly(f.den(), f.ram());
  bool n_simple = n.find_first_of("+") == std::string::npos && n.find('-') == std::string::npos;
  bool d_simple = d.find_first_of("+") == std::string::npos && d.find('-') == std::string::npos &&
                  d.find('*') == std::string::npos;
  std::string out = n_simple ? n : "(" + n + ")";
  out += "/";
  out += d_simple ? d : "(" + d + ")";
  return out;
}

}  // namespace hurwitz
