#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "x0quad/algebra/rational.hpp"

namespace x0quad {

/// Dense univariate polynomial over a field T, coefficients low degree
/// first.  T supplies zero()/one()/is_zero()/inverse()/typed(); the zero
/// element kept in `proto_` carries the field tag for results that have no
/// nonzero coefficient.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const T& proto) : proto_(proto.zero()) {}
  Polynomial(std::vector<T> coeffs, const T& proto) : c_(std::move(coeffs)), proto_(proto.zero()) {
    adopt_tag();
    trim();
  }
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (!c_.empty()) proto_ = c_.front().zero();
    adopt_tag();
    trim();
  }

  static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}, c); }
  static Polynomial monomial(const T& c, int k) {
    std::vector<T> v(static_cast<std::size_t>(k) + 1, c.zero());
    v.back() = c;
    return Polynomial(std::move(v), c);
  }
  /// The polynomial x over the field of `proto`.
  static Polynomial x(const T& proto) { return monomial(proto.one(), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return proto_;
    return c_[static_cast<std::size_t>(i)];
  }
  T lc() const { return c_.empty() ? proto_ : c_.back(); }
  const T& proto() const { return proto_; }
  T zero_elem() const { return proto_; }
  T one_elem() const { return proto_.one(); }

  Polynomial zero() const { return Polynomial(proto_); }
  Polynomial one() const { return constant(proto_.one()); }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this * lc().inverse();
  }

  Polynomial derivative() const {
    std::vector<T> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * proto_.from_integer(Integer(static_cast<unsigned long>(i))));
    return Polynomial(std::move(d), proto_);
  }

  T operator()(const T& x) const {
    T r = proto_;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  /// Evaluation at an element of an extension ring U (U::embed maps T into U).
  template <class U>
  U eval_in(const U& x) const {
    U r = x.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + x.embed(*it);
    return r;
  }

  /// f(g(x)).
  Polynomial compose(const Polynomial& g) const {
    Polynomial r(proto_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * g + constant(*it);
    return r;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    merge_tag(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), proto_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    merge_tag(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), proto_);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial& operator*=(const T& s) {
    for (auto& a : c_) a *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r(a.proto_.typed() ? a.proto_ : b.proto_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, r.proto_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }

  /// Quotient and remainder; throws on division by the zero polynomial.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
    T proto = a.proto_.typed() ? a.proto_ : b.proto_;
    Polynomial q(proto), r = a;
    r.proto_ = proto;
    if (a.degree() < b.degree()) return {q, r};
    T inv = b.lc().inverse();
    int db = b.degree();
    q.c_.assign(static_cast<std::size_t>(a.degree() - db + 1), proto);
    while (!r.is_zero() && r.degree() >= db) {
      int k = r.degree() - db;
      T c = r.lc() * inv;
      q.c_[static_cast<std::size_t>(k)] = c;
      for (int i = 0; i <= db; ++i) r.c_[static_cast<std::size_t>(i + k)] -= c * b.c_[static_cast<std::size_t>(i)];
      r.c_.pop_back();
      r.trim();
    }
    q.trim();
    return {q, r};
  }
  friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

  /// Exact quotient; throws when b does not divide a.
  static Polynomial div_exact(const Polynomial& a, const Polynomial& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw ArithmeticError("inexact polynomial division");
    return q;
  }

  bool divides(const Polynomial& a) const { return (a % *this).is_zero(); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const T& a = c_[static_cast<std::size_t>(i)];
      if (a.is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      bool unit = a.is_one() && i > 0;
      if (!unit) os << "(" << a << ")";
      if (i > 0) os << (unit ? "" : "*") << var;
      if (i > 1) os << "^" << i;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  void adopt_tag() {
    if (proto_.typed()) return;
    for (const auto& a : c_)
      if (a.typed()) {
        proto_ = a.zero();
        return;
      }
  }
  void merge_tag(const Polynomial& o) {
    if (!proto_.typed() && o.proto_.typed()) proto_ = o.proto_;
  }

  std::vector<T> c_;
  T proto_{};
};

template <class T>
Polynomial<T> poly_pow(Polynomial<T> base, unsigned long e) {
  Polynomial<T> r = base.one();
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

/// base^e mod m with an arbitrary-precision exponent.
template <class T>
Polynomial<T> pow_mod(Polynomial<T> base, Integer e, const Polynomial<T>& m) {
  Polynomial<T> r = m.one() % m;
  base = base % m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * base) % m;
    e >>= 1;
    if (e > 0) base = (base * base) % m;
  }
  return r;
}

/// Monic gcd (zero only when both inputs are zero).
template <class T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b) {
  while (!b.is_zero()) {
    Polynomial<T> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class T>
struct XgcdResult {
  Polynomial<T> g, s, t;  // g = s*a + t*b, g monic
};

template <class T>
XgcdResult<T> xgcd(const Polynomial<T>& a, const Polynomial<T>& b) {
  T proto = a.proto().typed() ? a.proto() : b.proto();
  Polynomial<T> r0 = a, r1 = b;
  Polynomial<T> s0 = Polynomial<T>::constant(proto.one()), s1(proto);
  Polynomial<T> t0(proto), t1 = Polynomial<T>::constant(proto.one());
  while (!r1.is_zero()) {
    auto [q, r] = Polynomial<T>::divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial<T> s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  T inv = r0.lc().inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

/// Inverse of a modulo m; throws when gcd(a, m) != 1.
template <class T>
Polynomial<T> inverse_mod(const Polynomial<T>& a, const Polynomial<T>& m) {
  auto r = xgcd(a % m, m);
  if (r.g.degree() != 0) throw ArithmeticError("polynomial not invertible modulo m");
  return r.s % m;
}

template <class T>
bool is_squarefree(const Polynomial<T>& f) {
  if (f.degree() <= 0) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

/// Resultant via the Euclidean algorithm over a field.
template <class T>
T resultant(Polynomial<T> a, Polynomial<T> b) {
  T proto = a.proto().typed() ? a.proto() : b.proto();
  if (a.is_zero() || b.is_zero()) return proto;
  T res = proto.one();
  while (b.degree() > 0) {
    int da = a.degree(), db = b.degree();
    Polynomial<T> r = a % b;
    if (r.is_zero()) return proto;
    if ((da % 2 == 1) && (db % 2 == 1)) res = -res;
    T lb = b.lc();
    T f = proto.one();
    for (int i = 0; i < da - r.degree(); ++i) f *= lb;
    res *= f;
    a = std::move(b);
    b = std::move(r);
  }
  if (b.is_zero()) return proto;
  T lb = b.lc();
  for (int i = 0; i < a.degree(); ++i) res *= lb;
  return res;
}

template <class T>
T discriminant(const Polynomial<T>& f) {
  int n = f.degree();
  T r = resultant(f, f.derivative()) / f.lc();
  if ((n * (n - 1) / 2) % 2 == 1) r = -r;
  return r;
}

using QPoly = Polynomial<Rational>;

/// Convenience constructor over Q from integers, low degree first.
QPoly qpoly(std::initializer_list<long> coeffs);
QPoly qpoly_from_strings(const std::vector<std::string>& coeffs);

}  // namespace x0quad
