#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "x0quad/algebra/prime_field.hpp"

namespace x0quad {

/// F_{p^k} = F_p[t]/(m(t)).  Construction verifies that m is irreducible.
class FiniteField {
 public:
  /// `modulus` is monic of degree k, low degree first.
  static std::shared_ptr<const FiniteField> create(std::uint64_t p, std::vector<std::uint64_t> modulus);
  /// Deterministic choice: the lexicographically first monic irreducible of degree k.
  static std::shared_ptr<const FiniteField> standard(std::uint64_t p, int k);

  std::uint64_t p() const { return p_; }
  int k() const { return k_; }
  const std::vector<std::uint64_t>& modulus() const { return m_; }
  Integer order() const { return power(Integer(static_cast<unsigned long>(p_)), static_cast<unsigned long>(k_)); }

  /// Raw residue arithmetic on length-k vectors.
  std::vector<std::uint64_t> mul(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) const;

 private:
  FiniteField(std::uint64_t p, std::vector<std::uint64_t> m) : p_(p), k_(static_cast<int>(m.size()) - 1), m_(std::move(m)) {}
  std::uint64_t p_;
  int k_;
  std::vector<std::uint64_t> m_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

/// True iff the monic polynomial (low degree first) is irreducible over F_p (Rabin's test).
bool is_irreducible_mod_p(std::uint64_t p, const std::vector<std::uint64_t>& monic);

class FiniteFieldElement {
 public:
  FiniteFieldElement() = default;
  FiniteFieldElement(FieldPtr field, std::vector<std::uint64_t> value);
  static FiniteFieldElement from_int(FieldPtr field, std::int64_t v);
  /// The class of t (the generator of the residue ring).
  static FiniteFieldElement generator(FieldPtr field);

  const FieldPtr& field() const { return f_; }
  const std::vector<std::uint64_t>& value() const { return v_; }
  bool typed() const { return f_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;
  FiniteFieldElement zero() const { return FiniteFieldElement(f_, {}, raw_tag{}); }
  FiniteFieldElement one() const;
  FiniteFieldElement from_integer(const Integer& n) const;
  FiniteFieldElement embed(const Rational& r) const;
  FiniteFieldElement embed(const PrimeFieldElement& x) const;
  FiniteFieldElement embed(const FiniteFieldElement& x) const { return x; }
  FiniteFieldElement inverse() const;
  FiniteFieldElement pow(Integer e) const;
  FiniteFieldElement frobenius() const { return pow(Integer(static_cast<unsigned long>(f_->p()))); }
  /// Value in F_p when the element lies in the prime field.
  bool in_prime_field() const;

  std::string str() const;

  FiniteFieldElement operator-() const;
  FiniteFieldElement& operator+=(const FiniteFieldElement& o);
  FiniteFieldElement& operator-=(const FiniteFieldElement& o);
  FiniteFieldElement& operator*=(const FiniteFieldElement& o);
  FiniteFieldElement& operator/=(const FiniteFieldElement& o) { return *this *= o.inverse(); }

  friend FiniteFieldElement operator+(FiniteFieldElement a, const FiniteFieldElement& b) { return a += b; }
  friend FiniteFieldElement operator-(FiniteFieldElement a, const FiniteFieldElement& b) { return a -= b; }
  friend FiniteFieldElement operator*(FiniteFieldElement a, const FiniteFieldElement& b) { return a *= b; }
  friend FiniteFieldElement operator/(FiniteFieldElement a, const FiniteFieldElement& b) { return a /= b; }
  friend bool operator==(const FiniteFieldElement& a, const FiniteFieldElement& b);
  friend std::ostream& operator<<(std::ostream& os, const FiniteFieldElement& x) { return os << x.str(); }

 private:
  struct raw_tag {};
  FiniteFieldElement(FieldPtr f, std::vector<std::uint64_t> v, raw_tag) : f_(std::move(f)), v_(std::move(v)) {}
  void unify(const FiniteFieldElement& o);
  void widen();

  FieldPtr f_;
  std::vector<std::uint64_t> v_;  // empty = zero; otherwise length k
};

using Fq = FiniteFieldElement;

bool field_sqrt(const FiniteFieldElement& x, FiniteFieldElement& root);
FiniteFieldElement random_element(const FieldPtr& field, std::mt19937_64& rng);
std::string key_of(const FiniteFieldElement& x);

}  // namespace x0quad
