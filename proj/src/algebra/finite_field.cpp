#include "x0quad/algebra/finite_field.hpp"

#include <numeric>

namespace x0quad {

namespace {

using Raw = std::vector<std::uint64_t>;

void raw_trim(Raw& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Raw raw_mod(Raw a, const Raw& m, std::uint64_t p) {
  raw_trim(a);
  Raw mm = m;
  raw_trim(mm);
  std::size_t dm = mm.size() - 1;
  std::uint64_t inv = powmod(mm.back(), p - 2, p);
  while (a.size() > dm) {
    std::uint64_t c = mulmod(a.back(), inv, p);
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      std::uint64_t t = mulmod(c, mm[i], p);
      a[i + shift] = (a[i + shift] + p - t) % p;
    }
    raw_trim(a);
  }
  return a;
}

Raw raw_mul(const Raw& a, const Raw& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Raw r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  raw_trim(r);
  return r;
}

Raw raw_sub(Raw a, const Raw& b, std::uint64_t p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  raw_trim(a);
  return a;
}

Raw raw_gcd(Raw a, Raw b, std::uint64_t p) {
  raw_trim(a);
  raw_trim(b);
  while (!b.empty()) {
    Raw r = raw_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Raw raw_powmod(Raw base, Integer e, const Raw& m, std::uint64_t p) {
  Raw r{1};
  base = raw_mod(base, m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = raw_mod(raw_mul(r, base, p), m, p);
    e >>= 1;
    if (e > 0) base = raw_mod(raw_mul(base, base, p), m, p);
  }
  return r;
}

std::vector<int> prime_divisors(int k) {
  std::vector<int> r;
  for (int q = 2; q <= k; ++q) {
    if (k % q) continue;
    r.push_back(q);
    while (k % q == 0) k /= q;
  }
  return r;
}

}  // namespace

bool is_irreducible_mod_p(std::uint64_t p, const std::vector<std::uint64_t>& monic) {
  Raw m = monic;
  raw_trim(m);
  int k = static_cast<int>(m.size()) - 1;
  if (k < 1) return false;
  if (k == 1) return true;
  Integer P(static_cast<unsigned long>(p));
  Raw x{0, 1};
  if (!raw_mod(raw_sub(raw_powmod(x, power(P, static_cast<unsigned long>(k)), m, p), x, p), m, p).empty()) return false;
  for (int q : prime_divisors(k)) {
    Raw t = raw_sub(raw_powmod(x, power(P, static_cast<unsigned long>(k / q)), m, p), x, p);
    Raw g = raw_gcd(m, t, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::shared_ptr<const FiniteField> FiniteField::create(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  if (p < 3 || !is_prime(p)) throw ArithmeticError("finite field characteristic must be an odd prime");
  for (auto& c : modulus) c %= p;
  raw_trim(modulus);
  if (modulus.size() < 2 || modulus.back() != 1) throw ArithmeticError("finite field modulus must be monic of degree >= 1");
  if (!is_irreducible_mod_p(p, modulus)) throw ArithmeticError("finite field modulus is reducible");
  return std::shared_ptr<const FiniteField>(new FiniteField(p, std::move(modulus)));
}

std::shared_ptr<const FiniteField> FiniteField::standard(std::uint64_t p, int k) {
  if (k < 1) throw ArithmeticError("extension degree must be positive");
  if (k == 1) return create(p, {0, 1});
  Raw m(static_cast<std::size_t>(k) + 1, 0);
  m[static_cast<std::size_t>(k)] = 1;
  // Odometer over the lower coefficients, constant term varying slowest.
  while (true) {
    if (m[0] != 0 && is_irreducible_mod_p(p, m)) return create(p, m);
    std::size_t i = 0;
    while (i < static_cast<std::size_t>(k)) {
      if (++m[i] < p) break;
      m[i] = 0;
      ++i;
    }
    if (i == static_cast<std::size_t>(k)) throw ArithmeticError("no irreducible polynomial found");
  }
}

std::vector<std::uint64_t> FiniteField::mul(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) const {
  Raw r = raw_mod(raw_mul(a, b, p_), m_, p_);
  if (!r.empty()) r.resize(static_cast<std::size_t>(k_), 0);
  return r;
}

FiniteFieldElement::FiniteFieldElement(FieldPtr field, std::vector<std::uint64_t> value) : f_(std::move(field)) {
  if (!f_) throw ArithmeticError("finite field element without a field");
  for (auto& c : value) c %= f_->p();
  v_ = raw_mod(std::move(value), f_->modulus(), f_->p());
  widen();
}

void FiniteFieldElement::widen() {
  raw_trim(v_);
  if (!v_.empty()) v_.resize(static_cast<std::size_t>(f_->k()), 0);
}

FiniteFieldElement FiniteFieldElement::from_int(FieldPtr field, std::int64_t v) {
  std::int64_t p = static_cast<std::int64_t>(field->p());
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return FiniteFieldElement(std::move(field), {static_cast<std::uint64_t>(r)});
}

FiniteFieldElement FiniteFieldElement::generator(FieldPtr field) { return FiniteFieldElement(std::move(field), {0, 1}); }

bool FiniteFieldElement::is_zero() const { return v_.empty(); }

bool FiniteFieldElement::is_one() const {
  if (v_.empty() || v_[0] != 1) return false;
  for (std::size_t i = 1; i < v_.size(); ++i)
    if (v_[i]) return false;
  return true;
}

FiniteFieldElement FiniteFieldElement::one() const {
  if (!f_) throw ArithmeticError("one() of an untagged finite field element");
  return FiniteFieldElement(f_, {1});
}

FiniteFieldElement FiniteFieldElement::from_integer(const Integer& n) const {
  if (!f_) throw ArithmeticError("untagged finite field element");
  return FiniteFieldElement(f_, {PrimeFieldElement::from_integer(f_->p(), n).value()});
}

FiniteFieldElement FiniteFieldElement::embed(const Rational& r) const {
  if (!f_) throw ArithmeticError("untagged finite field element");
  return FiniteFieldElement(f_, {PrimeFieldElement::from_rational(f_->p(), r).value()});
}

FiniteFieldElement FiniteFieldElement::embed(const PrimeFieldElement& x) const {
  if (!f_) throw ArithmeticError("untagged finite field element");
  if (x.typed() && x.modulus() != f_->p()) throw ArithmeticError("mismatched characteristic");
  return FiniteFieldElement(f_, {x.value()});
}

void FiniteFieldElement::unify(const FiniteFieldElement& o) {
  if (f_ == o.f_ || !o.f_) return;
  if (!f_) {
    f_ = o.f_;
    return;
  }
  if (f_->p() != o.f_->p() || f_->modulus() != o.f_->modulus()) throw ArithmeticError("mismatched finite fields");
}

FiniteFieldElement FiniteFieldElement::operator-() const {
  FiniteFieldElement r = *this;
  for (auto& c : r.v_) c = c ? f_->p() - c : 0;
  return r;
}

FiniteFieldElement& FiniteFieldElement::operator+=(const FiniteFieldElement& o) {
  unify(o);
  if (o.v_.empty()) return *this;
  if (v_.empty()) {
    v_ = o.v_;
    return *this;
  }
  std::uint64_t p = f_->p();
  for (std::size_t i = 0; i < v_.size(); ++i) {
    v_[i] += o.v_[i];
    if (v_[i] >= p) v_[i] -= p;
  }
  widen();
  return *this;
}

FiniteFieldElement& FiniteFieldElement::operator-=(const FiniteFieldElement& o) { return *this += -o; }

FiniteFieldElement& FiniteFieldElement::operator*=(const FiniteFieldElement& o) {
  unify(o);
  if (v_.empty() || o.v_.empty()) {
    v_.clear();
    return *this;
  }
  v_ = f_->mul(v_, o.v_);
  return *this;
}

FiniteFieldElement FiniteFieldElement::pow(Integer e) const {
  if (!f_) return *this;
  if (e < 0) return inverse().pow(-e);
  FiniteFieldElement r = one(), b = *this;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return r;
}

FiniteFieldElement FiniteFieldElement::inverse() const {
  if (is_zero()) throw ArithmeticError("inverse of zero in a finite field");
  return pow(f_->order() - 2);
}

bool FiniteFieldElement::in_prime_field() const {
  for (std::size_t i = 1; i < v_.size(); ++i)
    if (v_[i]) return false;
  return true;
}

std::string FiniteFieldElement::str() const {
  if (v_.empty()) return "0";
  std::string s = "[";
  for (std::size_t i = 0; i < v_.size(); ++i) s += (i ? "," : "") + std::to_string(v_[i]);
  return s + "]";
}

bool operator==(const FiniteFieldElement& a, const FiniteFieldElement& b) {
  if (a.v_ != b.v_) return false;
  if (a.f_ == b.f_ || !a.f_ || !b.f_) return true;
  return a.f_->p() == b.f_->p() && a.f_->modulus() == b.f_->modulus();
}

bool field_sqrt(const FiniteFieldElement& x, FiniteFieldElement& root) {
  if (x.is_zero()) {
    root = x;
    return true;
  }
  Integer q = x.field()->order();
  Integer qm1 = q - 1;
  if (!x.pow(qm1 / 2).is_one()) return false;
  Integer t = qm1;
  unsigned long s = 0;
  while (mpz_even_p(t.get_mpz_t())) {
    t >>= 1;
    ++s;
  }
  // Deterministic non-residue search.
  FiniteFieldElement z;
  const FieldPtr& F = x.field();
  for (std::uint64_t c = 1;; ++c) {
    std::vector<std::uint64_t> v;
    std::uint64_t cc = c;
    while (cc) {
      v.push_back(cc % F->p());
      cc /= F->p();
    }
    FiniteFieldElement cand(F, v);
    if (cand.is_zero()) continue;
    if (!cand.pow(qm1 / 2).is_one()) {
      z = cand;
      break;
    }
  }
  unsigned long m = s;
  FiniteFieldElement c = z.pow(t), tt = x.pow(t), r = x.pow((t + 1) / 2);
  while (!tt.is_one()) {
    unsigned long i = 0;
    FiniteFieldElement u = tt;
    while (!u.is_one()) {
      u *= u;
      ++i;
    }
    FiniteFieldElement b = c;
    for (unsigned long j = 0; j + 1 < m - i; ++j) b *= b;
    m = i;
    c = b * b;
    tt *= c;
    r *= b;
  }
  root = r;
  return true;
}

FiniteFieldElement random_element(const FieldPtr& field, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, field->p() - 1);
  std::vector<std::uint64_t> v(static_cast<std::size_t>(field->k()));
  for (auto& c : v) c = dist(rng);
  return FiniteFieldElement(field, v);
}

std::string key_of(const FiniteFieldElement& x) { return x.str(); }

}  // namespace x0quad
