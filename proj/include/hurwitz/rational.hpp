#pragma once

// Exact rational numbers on 64-bit words, used for valuations and depths.
// Magnitudes stay tiny (numerators/denominators bounded by ramification
// indices times pole orders), but every operation still checks for overflow
// and throws rather than wrapping.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hurwitz {

class Rat {
 public:
  constexpr Rat() : num_(0), den_(1) {}
  constexpr Rat(long long n) : num_(n), den_(1) {}
  Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  long long ceil() const { return -((-*this).floor()); }
  // exact integer value; throws if not an integer
  long long as_integer() const {
    if (den_ != 1) throw std::domain_error("Rat: not an integer: " + str());
    return num_;
  }

  Rat operator-() const { return Rat(-num_, den_); }
  Rat operator+(const Rat& o) const {
    return Rat(add_chk(mul_chk(num_, o.den_), mul_chk(o.num_, den_)),
               mul_chk(den_, o.den_));
  }
  Rat operator-(const Rat& o) const { return *this + (-o); }
  Rat operator*(const Rat& o) const {
    return Rat(mul_chk(num_, o.num_), mul_chk(den_, o.den_));
  }
  Rat operator/(const Rat& o) const {
    if (o.num_ == 0) throw std::domain_error("Rat: division by zero");
    return Rat(mul_chk(num_, o.den_), mul_chk(den_, o.num_));
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const {
    return mul_chk(num_, o.den_) < mul_chk(o.num_, den_);
  }
  bool operator<=(const Rat& o) const { return *this < o || *this == o; }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return o <= *this; }

  // "17" or "6/5"
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  static Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
  static Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

 private:
  long long num_, den_;

  static long long add_chk(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rat: overflow");
    return r;
  }
  static long long mul_chk(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rat: overflow");
    return r;
  }
  void normalize() {
    if (den_ == 0) throw std::domain_error("Rat: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (num_ == 0) den_ = 1;
  }
};

}  // namespace hurwitz
