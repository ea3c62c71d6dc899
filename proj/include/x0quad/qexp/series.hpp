#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "x0quad/algebra/rational.hpp"

namespace x0quad {

/// sum c_m q^(m/N) over exponent indices m < prec.  Coefficients at or past
/// the precision are unknown, never zero; zero coefficients are not stored.
template <class C>
class TruncatedSeries {
 public:
  TruncatedSeries(long denominator, long prec) : n_(denominator), prec_(prec) {
    if (denominator < 1) throw std::invalid_argument("exponent denominator must be positive");
  }

  long denominator() const { return n_; }
  long precision() const { return prec_; }
  const std::map<long, C>& terms() const { return c_; }

  C coeff(long m) const {
    if (m >= prec_) throw std::out_of_range("coefficient beyond series precision");
    auto it = c_.find(m);
    return it == c_.end() ? C{} : it->second;
  }

  void set(long m, const C& v) {
    if (m >= prec_) return;
    if (v.is_zero())
      c_.erase(m);
    else
      c_[m] = v;
  }

  void add_to(long m, const C& v) {
    if (m >= prec_ || v.is_zero()) return;
    auto [it, fresh] = c_.try_emplace(m, v);
    if (!fresh) {
      it->second += v;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  /// Smallest stored exponent index, or prec for the zero series.
  long valuation() const { return c_.empty() ? prec_ : c_.begin()->first; }
  bool is_zero() const { return c_.empty(); }

  /// Same series with exponents over a multiple of the denominator.
  TruncatedSeries with_denominator(long n2) const {
    if (n2 % n_) throw std::invalid_argument("new denominator must be a multiple");
    long s = n2 / n_;
    TruncatedSeries r(n2, prec_ * s);
    for (const auto& [m, v] : c_) r.c_[m * s] = v;
    return r;
  }

  /// F(q) -> F(q^d).
  TruncatedSeries substitute_power(long d, long new_prec) const {
    TruncatedSeries r(n_, new_prec);
    if (d < 1 || new_prec > prec_ * d)
      throw std::invalid_argument("substitution would exceed the known precision");
    for (const auto& [m, v] : c_) r.set(m * d, v);
    return r;
  }

  TruncatedSeries truncate(long prec) const {
    TruncatedSeries r(n_, std::min(prec, prec_));
    for (const auto& [m, v] : c_) r.set(m, v);
    return r;
  }

  TruncatedSeries operator-() const {
    TruncatedSeries r = *this;
    for (auto& [m, v] : r.c_) v = -v;
    return r;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    align(o);
    prec_ = std::min(prec_, o.prec_);
    trim_to_prec();
    for (const auto& [m, v] : o.c_) add_to(m, v);
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) { return *this += -o; }
  TruncatedSeries& operator*=(const C& s) {
    if (s.is_zero()) {
      c_.clear();
      return *this;
    }
    for (auto& [m, v] : c_) v *= s;
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const C& s) { return a *= s; }
  friend TruncatedSeries operator*(const C& s, TruncatedSeries a) { return a *= s; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.align(b);
    long prec = std::min(a.prec_ + b.valuation(), b.prec_ + a.valuation());
    TruncatedSeries r(a.n_, prec);
    for (const auto& [i, x] : a.c_) {
      if (i + b.valuation() >= prec) break;
      for (const auto& [j, y] : b.c_) {
        if (i + j >= prec) break;
        r.add_to(i + j, x * y);
      }
    }
    return r;
  }

  /// Equality on the common precision.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return !first_difference(a, b).has_value();
  }

  /// First exponent index below the common precision where the series differ.
  friend std::optional<long> first_difference(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.align(b);
    long prec = std::min(a.prec_, b.prec_);
    auto ia = a.c_.begin();
    auto ib = b.c_.begin();
    while (true) {
      long ma = ia == a.c_.end() ? prec : std::min(ia->first, prec);
      long mb = ib == b.c_.end() ? prec : std::min(ib->first, prec);
      if (ma == prec && mb == prec) return std::nullopt;
      if (ma != mb) return std::min(ma, mb);
      if (!(ia->second == ib->second)) return ma;
      ++ia;
      ++ib;
    }
  }

 private:
  void align(const TruncatedSeries& o) const {
    if (o.n_ != n_) throw std::invalid_argument("series with different exponent denominators");
  }
  void trim_to_prec() {
    c_.erase(c_.lower_bound(prec_), c_.end());
  }

  long n_;
  long prec_;
  std::map<long, C> c_;
};

}  // namespace x0quad
