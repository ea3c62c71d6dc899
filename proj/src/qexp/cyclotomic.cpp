#include "x0quad/qexp/cyclotomic.hpp"

#include <stdexcept>

namespace x0quad {

QPoly cyclotomic_polynomial(long m) {
  if (m < 1) throw std::invalid_argument("cyclotomic conductor must be positive");
  QPoly r = QPoly::monomial(Rational(1L), static_cast<int>(m)) - QPoly::constant(Rational(1L));
  for (long d = 1; d < m; ++d)
    if (m % d == 0) r = QPoly::div_exact(r, cyclotomic_polynomial(d));
  return r;
}

long euler_phi(long m) {
  long r = m;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    r -= r / p;
  }
  if (m > 1) r -= r / m;
  return r;
}

CyclotomicRing::CyclotomicRing(long m) : m_(m), phi_(cyclotomic_polynomial(m)) {
  if (!phi_.lc().is_one() || phi_.degree() != euler_phi(m))
    throw ArithmeticError("cyclotomic polynomial is not monic of degree phi(m)");
  std::size_t k = static_cast<std::size_t>(phi_.degree());
  QPoly xj = QPoly::constant(Rational(1L));
  QPoly x = QPoly::x(Rational());
  for (long j = 0; j < m; ++j) {
    std::vector<Rational> row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = xj.coeff(static_cast<int>(i));
    powers_.push_back(std::move(row));
    xj = (xj * x) % phi_;
  }
}

std::shared_ptr<const CyclotomicRing> CyclotomicRing::create(long m) {
  if (m < 1) throw std::invalid_argument("cyclotomic conductor must be positive");
  return std::shared_ptr<const CyclotomicRing>(new CyclotomicRing(m));
}

CyclotomicRingElement::CyclotomicRingElement(CyclotomicPtr ring, std::vector<Rational> value)
    : r_(std::move(ring)), v_(std::move(value)) {
  if (!r_) throw ArithmeticError("cyclotomic element without a ring");
  if (static_cast<int>(v_.size()) > r_->degree()) {
    QPoly p(std::vector<Rational>(v_.begin(), v_.end()));
    QPoly red = p % r_->modulus();
    v_.assign(static_cast<std::size_t>(r_->degree()), Rational());
    for (int i = 0; i <= red.degree(); ++i) v_[static_cast<std::size_t>(i)] = red.coeff(i);
  }
  normalize();
}

CyclotomicRingElement CyclotomicRingElement::zeta_power(const CyclotomicPtr& ring, long j) {
  long m = ring->conductor();
  j %= m;
  if (j < 0) j += m;
  return CyclotomicRingElement(ring, ring->power(j));
}

CyclotomicRingElement CyclotomicRingElement::rational(const CyclotomicPtr& ring, const Rational& r) {
  return CyclotomicRingElement(ring, {r});
}

void CyclotomicRingElement::normalize() {
  bool zero = true;
  for (const auto& c : v_)
    if (!c.is_zero()) zero = false;
  if (zero)
    v_.clear();
  else
    v_.resize(static_cast<std::size_t>(r_->degree()));
}

bool CyclotomicRingElement::is_rational() const {
  for (std::size_t i = 1; i < v_.size(); ++i)
    if (!v_[i].is_zero()) return false;
  return true;
}

bool CyclotomicRingElement::is_one() const { return is_rational() && rational_part().is_one(); }

void CyclotomicRingElement::unify(const CyclotomicRingElement& o) {
  if (!o.r_ || r_ == o.r_) return;
  if (!r_) {
    r_ = o.r_;
    return;
  }
  if (r_->conductor() != o.r_->conductor()) throw ArithmeticError("mismatched cyclotomic rings");
}

QPoly CyclotomicRingElement::as_poly() const { return QPoly(std::vector<Rational>(v_.begin(), v_.end())); }

CyclotomicRingElement CyclotomicRingElement::operator-() const {
  CyclotomicRingElement r = *this;
  for (auto& c : r.v_) c = -c;
  return r;
}

CyclotomicRingElement& CyclotomicRingElement::operator+=(const CyclotomicRingElement& o) {
  unify(o);
  if (o.v_.empty()) return *this;
  if (v_.empty()) {
    v_ = o.v_;
    return *this;
  }
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  normalize();
  return *this;
}

CyclotomicRingElement& CyclotomicRingElement::operator*=(const CyclotomicRingElement& o) {
  unify(o);
  if (v_.empty() || o.v_.empty()) {
    v_.clear();
    return *this;
  }
  std::size_t k = static_cast<std::size_t>(r_->degree());
  std::vector<Rational> acc(k);
  long m = r_->conductor();
  // Products of basis monomials x^(i+j) with i + j < 2k - 1 <= 2m are read off
  // the power table after folding by x^m = 1.
  for (std::size_t i = 0; i < k; ++i) {
    if (v_[i].is_zero()) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (o.v_[j].is_zero()) continue;
      Rational c = v_[i] * o.v_[j];
      const auto& row = r_->power(static_cast<long>(i + j) % m);
      for (std::size_t t = 0; t < k; ++t)
        if (!row[t].is_zero()) acc[t] += c * row[t];
    }
  }
  v_ = std::move(acc);
  normalize();
  return *this;
}

CyclotomicRingElement& CyclotomicRingElement::operator*=(const Rational& s) {
  if (s.is_zero()) {
    v_.clear();
    return *this;
  }
  for (auto& c : v_) c *= s;
  return *this;
}

CyclotomicRingElement CyclotomicRingElement::inverse() const {
  if (is_zero()) throw ArithmeticError("inverse of zero in a cyclotomic field");
  QPoly inv = inverse_mod(as_poly(), r_->modulus());
  std::vector<Rational> v;
  for (int i = 0; i <= inv.degree(); ++i) v.push_back(inv.coeff(i));
  return CyclotomicRingElement(r_, std::move(v));
}

std::string CyclotomicRingElement::str() const {
  if (v_.empty()) return "0";
  return as_poly().str("z");
}

bool operator==(const CyclotomicRingElement& a, const CyclotomicRingElement& b) {
  if (a.r_ && b.r_ && a.r_->conductor() != b.r_->conductor()) return false;
  return a.v_ == b.v_;
}

}  // namespace x0quad
