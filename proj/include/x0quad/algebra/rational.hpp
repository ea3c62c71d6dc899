#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <map>
#include <string>
#include <string_view>

namespace x0quad {

using Integer = mpz_class;

/// Thrown for every arithmetic precondition violation (division by zero,
/// mismatched fields, non-invertible reductions).
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(static_cast<long>(v)) {}  // NOLINT
  Rational(const Integer& n) : q_(n) {}  // NOLINT
  Rational(const Integer& num, const Integer& den);

  /// Parses "p", "-p", "p/q".
  static Rational parse(std::string_view text);

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool typed() const { return true; }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational zero() const { return {}; }
  Rational one() const { return Rational(1L); }
  Rational embed(const Rational& r) const { return r; }
  Rational from_integer(const Integer& n) const { return Rational(n); }
  Rational inverse() const;

  std::string str() const { return q_.get_str(); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  std::size_t hash() const;

 private:
  mpq_class q_;
};

/// Exact square root when `r` is the square of a rational.
bool rational_sqrt(const Rational& r, Rational& root);

/// Prime factorization of |n| (n != 0): trial division, then Pollard-Brent rho.
std::map<Integer, int> factor_integer(const Integer& n);

/// Squarefree part of a nonzero integer, sign preserved.
Integer squarefree_part(const Integer& n);

/// Squarefree integer e with r = e * s^2 for rational s (r != 0).
Integer squarefree_kernel(const Rational& r);

Integer power(const Integer& base, unsigned long e);

std::string to_string(const Integer& n);

}  // namespace x0quad

template <>
struct std::hash<x0quad::Rational> {
  std::size_t operator()(const x0quad::Rational& r) const noexcept { return r.hash(); }
};
