#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <string>

#include "x0quad/algebra/rational.hpp"

namespace x0quad {

/// Element of F_p for an odd prime p < 2^62.  The modulus travels with the
/// value; a default-constructed element is an untagged zero that adopts the
/// modulus of whatever it is combined with.
class PrimeFieldElement {
 public:
  PrimeFieldElement() = default;
  PrimeFieldElement(std::uint64_t p, std::int64_t v);
  static PrimeFieldElement from_integer(std::uint64_t p, const Integer& n);
  /// Reduction of a rational; throws when p divides the denominator.
  static PrimeFieldElement from_rational(std::uint64_t p, const Rational& r);

  std::uint64_t modulus() const { return p_; }
  std::uint64_t value() const { return v_; }
  bool typed() const { return p_ != 0; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  PrimeFieldElement zero() const { return PrimeFieldElement(p_, 0, raw_tag{}); }
  PrimeFieldElement one() const;
  PrimeFieldElement from_integer(const Integer& n) const { return from_integer(p_, n); }
  PrimeFieldElement embed(const Rational& r) const { return from_rational(p_, r); }
  PrimeFieldElement embed(const PrimeFieldElement& x) const { return x; }
  PrimeFieldElement inverse() const;
  PrimeFieldElement pow(std::uint64_t e) const;

  /// Legendre symbol: 0, 1 or -1.
  int legendre() const;
  /// Centered lift in (-p/2, p/2].
  std::int64_t signed_value() const;
  std::string str() const { return std::to_string(v_); }

  PrimeFieldElement operator-() const;
  PrimeFieldElement& operator+=(const PrimeFieldElement& o);
  PrimeFieldElement& operator-=(const PrimeFieldElement& o);
  PrimeFieldElement& operator*=(const PrimeFieldElement& o);
  PrimeFieldElement& operator/=(const PrimeFieldElement& o) { return *this *= o.inverse(); }

  friend PrimeFieldElement operator+(PrimeFieldElement a, const PrimeFieldElement& b) { return a += b; }
  friend PrimeFieldElement operator-(PrimeFieldElement a, const PrimeFieldElement& b) { return a -= b; }
  friend PrimeFieldElement operator*(PrimeFieldElement a, const PrimeFieldElement& b) { return a *= b; }
  friend PrimeFieldElement operator/(PrimeFieldElement a, const PrimeFieldElement& b) { return a /= b; }
  friend bool operator==(const PrimeFieldElement& a, const PrimeFieldElement& b) {
    return a.v_ == b.v_ && (a.p_ == b.p_ || a.p_ == 0 || b.p_ == 0);
  }
  friend std::ostream& operator<<(std::ostream& os, const PrimeFieldElement& x) { return os << x.v_; }

 private:
  struct raw_tag {};
  PrimeFieldElement(std::uint64_t p, std::uint64_t v, raw_tag) : p_(p), v_(v) {}
  void unify(const PrimeFieldElement& o);

  std::uint64_t p_ = 0;
  std::uint64_t v_ = 0;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
bool is_prime(std::uint64_t n);

/// Square root by Tonelli–Shanks; false for non-residues.
bool field_sqrt(const PrimeFieldElement& x, PrimeFieldElement& root);

PrimeFieldElement random_element(std::uint64_t p, std::mt19937_64& rng);

inline std::string key_of(const PrimeFieldElement& x) { return std::to_string(x.value()); }
inline std::string key_of(const Rational& x) { return x.str(); }

}  // namespace x0quad
