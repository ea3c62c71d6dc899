#pragma once

#include <memory>
#include <string>
#include <vector>

#include "x0quad/algebra/polynomial.hpp"
#include "x0quad/algebra/rational.hpp"

namespace x0quad {

/// Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d.
QPoly cyclotomic_polynomial(long m);
long euler_phi(long m);

/// Q(zeta_m) = Q[x]/(Phi_m).
class CyclotomicRing {
 public:
  static std::shared_ptr<const CyclotomicRing> create(long m);

  long conductor() const { return m_; }
  int degree() const { return phi_.degree(); }
  const QPoly& modulus() const { return phi_; }
  /// Residue of x^j, 0 <= j < m, as a length-degree() vector.
  const std::vector<Rational>& power(long j) const { return powers_[static_cast<std::size_t>(j)]; }

 private:
  explicit CyclotomicRing(long m);
  long m_;
  QPoly phi_;
  std::vector<std::vector<Rational>> powers_;
};

using CyclotomicPtr = std::shared_ptr<const CyclotomicRing>;

class CyclotomicRingElement {
 public:
  CyclotomicRingElement() = default;
  CyclotomicRingElement(CyclotomicPtr ring, std::vector<Rational> value);
  static CyclotomicRingElement zeta_power(const CyclotomicPtr& ring, long j);
  static CyclotomicRingElement rational(const CyclotomicPtr& ring, const Rational& r);

  const CyclotomicPtr& ring() const { return r_; }
  bool typed() const { return r_ != nullptr; }
  bool is_zero() const { return v_.empty(); }
  bool is_one() const;
  /// True when the value lies in Q (all non-constant residue coefficients vanish).
  bool is_rational() const;
  Rational rational_part() const { return v_.empty() ? Rational() : v_[0]; }
  const std::vector<Rational>& value() const { return v_; }

  CyclotomicRingElement zero() const { return CyclotomicRingElement(r_, {}); }
  CyclotomicRingElement one() const { return rational(r_, Rational(1L)); }
  CyclotomicRingElement embed(const Rational& x) const { return rational(r_, x); }
  CyclotomicRingElement from_integer(const Integer& n) const { return rational(r_, Rational(n)); }
  CyclotomicRingElement inverse() const;

  std::string str() const;

  CyclotomicRingElement operator-() const;
  CyclotomicRingElement& operator+=(const CyclotomicRingElement& o);
  CyclotomicRingElement& operator-=(const CyclotomicRingElement& o) { return *this += -o; }
  CyclotomicRingElement& operator*=(const CyclotomicRingElement& o);
  CyclotomicRingElement& operator*=(const Rational& s);
  CyclotomicRingElement& operator/=(const CyclotomicRingElement& o) { return *this *= o.inverse(); }

  friend CyclotomicRingElement operator+(CyclotomicRingElement a, const CyclotomicRingElement& b) { return a += b; }
  friend CyclotomicRingElement operator-(CyclotomicRingElement a, const CyclotomicRingElement& b) { return a -= b; }
  friend CyclotomicRingElement operator*(CyclotomicRingElement a, const CyclotomicRingElement& b) { return a *= b; }
  friend CyclotomicRingElement operator*(CyclotomicRingElement a, const Rational& s) { return a *= s; }
  friend CyclotomicRingElement operator/(CyclotomicRingElement a, const CyclotomicRingElement& b) { return a /= b; }
  friend bool operator==(const CyclotomicRingElement& a, const CyclotomicRingElement& b);

 private:
  void unify(const CyclotomicRingElement& o);
  void normalize();
  QPoly as_poly() const;

  CyclotomicPtr r_;
  std::vector<Rational> v_;  // empty = zero; otherwise length degree()
};

using Cyclo = CyclotomicRingElement;

}  // namespace x0quad
