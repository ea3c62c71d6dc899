#include "x0quad/algebra/prime_field.hpp"

namespace x0quad {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeFieldElement::PrimeFieldElement(std::uint64_t p, std::int64_t v) : p_(p) {
  if (p < 3 || p % 2 == 0 || p >= (1ULL << 62)) throw ArithmeticError("prime field modulus must be an odd prime");
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  v_ = static_cast<std::uint64_t>(r);
}

PrimeFieldElement PrimeFieldElement::from_integer(std::uint64_t p, const Integer& n) {
  if (p == 0) throw ArithmeticError("untagged prime field");
  Integer r = n % Integer(static_cast<unsigned long>(p));
  if (r < 0) r += static_cast<unsigned long>(p);
  return PrimeFieldElement(p, static_cast<std::int64_t>(r.get_ui()));
}

PrimeFieldElement PrimeFieldElement::from_rational(std::uint64_t p, const Rational& r) {
  PrimeFieldElement den = from_integer(p, r.den());
  if (den.is_zero()) throw ArithmeticError("prime divides a denominator");
  return from_integer(p, r.num()) / den;
}

PrimeFieldElement PrimeFieldElement::one() const {
  if (p_ == 0) throw ArithmeticError("one() of an untagged prime field element");
  return PrimeFieldElement(p_, 1, raw_tag{});
}

void PrimeFieldElement::unify(const PrimeFieldElement& o) {
  if (p_ == o.p_) return;
  if (p_ == 0) {
    p_ = o.p_;
    return;
  }
  if (o.p_ != 0) throw ArithmeticError("mismatched prime fields");
}

PrimeFieldElement PrimeFieldElement::inverse() const {
  if (v_ == 0) throw ArithmeticError("inverse of zero in F_p");
  return PrimeFieldElement(p_, powmod(v_, p_ - 2, p_), raw_tag{});
}

PrimeFieldElement PrimeFieldElement::pow(std::uint64_t e) const {
  return PrimeFieldElement(p_, powmod(v_, e, p_), raw_tag{});
}

int PrimeFieldElement::legendre() const {
  if (v_ == 0) return 0;
  return powmod(v_, (p_ - 1) / 2, p_) == 1 ? 1 : -1;
}

std::int64_t PrimeFieldElement::signed_value() const {
  if (v_ > p_ / 2) return static_cast<std::int64_t>(v_) - static_cast<std::int64_t>(p_);
  return static_cast<std::int64_t>(v_);
}

PrimeFieldElement PrimeFieldElement::operator-() const {
  return PrimeFieldElement(p_, v_ == 0 ? 0 : p_ - v_, raw_tag{});
}

PrimeFieldElement& PrimeFieldElement::operator+=(const PrimeFieldElement& o) {
  unify(o);
  v_ += o.v_;
  if (v_ >= p_ && p_ != 0) v_ -= p_;
  return *this;
}

PrimeFieldElement& PrimeFieldElement::operator-=(const PrimeFieldElement& o) {
  unify(o);
  v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
  return *this;
}

PrimeFieldElement& PrimeFieldElement::operator*=(const PrimeFieldElement& o) {
  unify(o);
  v_ = p_ == 0 ? 0 : mulmod(v_, o.v_, p_);
  return *this;
}

bool field_sqrt(const PrimeFieldElement& x, PrimeFieldElement& root) {
  std::uint64_t p = x.modulus();
  if (x.is_zero()) {
    root = x;
    return true;
  }
  if (x.legendre() != 1) return false;
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s, c = powmod(z, q, p), t = powmod(x.value(), q, p), r = powmod(x.value(), (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  root = PrimeFieldElement(p, static_cast<std::int64_t>(r));
  return true;
}

PrimeFieldElement random_element(std::uint64_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  return PrimeFieldElement(p, static_cast<std::int64_t>(dist(rng)));
}

}  // namespace x0quad
