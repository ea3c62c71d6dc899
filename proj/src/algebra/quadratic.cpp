#include "x0quad/algebra/quadratic.hpp"

namespace x0quad {

QuadraticFieldElement::QuadraticFieldElement(const Integer& d, const Rational& a, const Rational& b)
    : d_(d), a_(a), b_(b) {
  if (d == 0 || d == 1) throw ArithmeticError("quadratic field tag must be a squarefree integer other than 0, 1");
  if (squarefree_part(d) != d) throw ArithmeticError("quadratic field tag is not squarefree: " + d.get_str());
}

QuadraticFieldElement QuadraticFieldElement::rational(const Rational& a) {
  return {Integer(0), a, Rational(), raw_tag{}};
}

void QuadraticFieldElement::unify(const QuadraticFieldElement& o) {
  if (d_ == o.d_ || o.d_ == 0) return;
  if (d_ == 0) {
    d_ = o.d_;
    return;
  }
  throw ArithmeticError("mismatched quadratic fields Q(sqrt " + d_.get_str() + ") and Q(sqrt " + o.d_.get_str() + ")");
}

QuadraticFieldElement& QuadraticFieldElement::operator+=(const QuadraticFieldElement& o) {
  unify(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadraticFieldElement& QuadraticFieldElement::operator-=(const QuadraticFieldElement& o) {
  unify(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadraticFieldElement& QuadraticFieldElement::operator*=(const QuadraticFieldElement& o) {
  unify(o);
  Rational na = a_ * o.a_ + Rational(d_) * b_ * o.b_;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

QuadraticFieldElement QuadraticFieldElement::inverse() const {
  if (is_zero()) throw ArithmeticError("inverse of zero in a quadratic field");
  Rational n = norm();
  return {d_, a_ / n, -b_ / n, raw_tag{}};
}

std::string QuadraticFieldElement::str() const {
  if (b_.is_zero()) return a_.str();
  std::string s;
  if (!a_.is_zero()) s = a_.str() + (b_.sign() > 0 ? " + " : " - ");
  else if (b_.sign() < 0) s = "-";
  Rational ab = b_.sign() < 0 ? -b_ : b_;
  s += (ab.is_one() ? std::string() : ab.str() + "*") + "w";
  return s;
}

bool field_sqrt(const QuadraticFieldElement& x, QuadraticFieldElement& root) {
  if (x.is_zero()) {
    root = x;
    return true;
  }
  // (s + t w)^2 = s^2 + d t^2 + 2 s t w.
  Rational nr;
  if (!rational_sqrt(x.norm(), nr)) return false;
  for (const Rational& n : {nr, -nr}) {
    Rational s2 = (x.a() + n) / Rational(2);
    Rational s;
    if (rational_sqrt(s2, s) && !s.is_zero()) {
      Rational t = x.b() / (Rational(2) * s);
      QuadraticFieldElement cand = x.typed() ? QuadraticFieldElement(x.d(), s, t) : QuadraticFieldElement::rational(s);
      if (cand * cand == x) {
        root = cand;
        return true;
      }
    }
    if (x.typed() && s2.is_zero()) continue;
    // s = 0: x = d t^2.
    if (x.typed() && x.b().is_zero()) {
      Rational t;
      if (rational_sqrt(x.a() / Rational(x.d()), t)) {
        root = QuadraticFieldElement(x.d(), Rational(), t);
        return true;
      }
    }
  }
  return false;
}

}  // namespace x0quad
