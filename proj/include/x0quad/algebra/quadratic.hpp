#pragma once

#include <ostream>
#include <string>

#include "x0quad/algebra/rational.hpp"

namespace x0quad {

/// a + b*w in Q(w), w^2 = d.  d == 0 marks an untagged rational that embeds
/// into every quadratic field (b must then be zero).
class QuadraticFieldElement {
 public:
  QuadraticFieldElement() = default;
  QuadraticFieldElement(const Integer& d, const Rational& a, const Rational& b = Rational());
  /// Untagged rational.
  static QuadraticFieldElement rational(const Rational& a);
  /// The generator w of Q(sqrt d).
  static QuadraticFieldElement sqrt_d(const Integer& d) { return {d, Rational(), Rational(1)}; }

  const Integer& d() const { return d_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool typed() const { return d_ != 0; }
  bool is_rational() const { return b_.is_zero(); }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_one() const { return a_.is_one() && b_.is_zero(); }
  QuadraticFieldElement zero() const { return {d_, Rational(), Rational(), raw_tag{}}; }
  QuadraticFieldElement one() const { return {d_, Rational(1), Rational(), raw_tag{}}; }
  QuadraticFieldElement from_integer(const Integer& n) const { return {d_, Rational(n), Rational(), raw_tag{}}; }
  QuadraticFieldElement embed(const Rational& r) const { return {d_, r, Rational(), raw_tag{}}; }
  QuadraticFieldElement embed(const QuadraticFieldElement& x) const { return x; }

  QuadraticFieldElement conj() const { return {d_, a_, -b_, raw_tag{}}; }
  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }
  Rational trace() const { return a_ + a_; }
  QuadraticFieldElement inverse() const;

  std::string str() const;

  QuadraticFieldElement operator-() const { return {d_, -a_, -b_, raw_tag{}}; }
  QuadraticFieldElement& operator+=(const QuadraticFieldElement& o);
  QuadraticFieldElement& operator-=(const QuadraticFieldElement& o);
  QuadraticFieldElement& operator*=(const QuadraticFieldElement& o);
  QuadraticFieldElement& operator/=(const QuadraticFieldElement& o) { return *this *= o.inverse(); }

  friend QuadraticFieldElement operator+(QuadraticFieldElement x, const QuadraticFieldElement& y) { return x += y; }
  friend QuadraticFieldElement operator-(QuadraticFieldElement x, const QuadraticFieldElement& y) { return x -= y; }
  friend QuadraticFieldElement operator*(QuadraticFieldElement x, const QuadraticFieldElement& y) { return x *= y; }
  friend QuadraticFieldElement operator/(QuadraticFieldElement x, const QuadraticFieldElement& y) { return x /= y; }
  friend bool operator==(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.d_ == y.d_ || x.b_.is_zero());
  }
  friend std::ostream& operator<<(std::ostream& os, const QuadraticFieldElement& x) { return os << x.str(); }

 private:
  struct raw_tag {};
  QuadraticFieldElement(const Integer& d, const Rational& a, const Rational& b, raw_tag) : d_(d), a_(a), b_(b) {}
  void unify(const QuadraticFieldElement& o);

  Integer d_ = 0;
  Rational a_, b_;
};

using QF = QuadraticFieldElement;

inline std::string key_of(const QuadraticFieldElement& x) { return x.a().str() + "," + x.b().str(); }

/// Square root inside the field, when one exists.
bool field_sqrt(const QuadraticFieldElement& x, QuadraticFieldElement& root);

}  // namespace x0quad
