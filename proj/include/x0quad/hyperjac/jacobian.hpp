#pragma once

#include <stdexcept>
#include <string>

#include "x0quad/algebra/polynomial.hpp"
#include "x0quad/algebra/rational.hpp"

namespace x0quad {

/// A divisor class in Mumford form.  For even-degree (split) models the class
/// is [div(u, v) + a inf+ + b inf- - D_inf] with b = g - deg u - a and
/// D_inf = ceil(g/2) inf+ + floor(g/2) inf-; for odd degree, a is unused.
template <class T>
struct MumfordDivisor {
  Polynomial<T> u, v;
  int a = 0;
};

/// Jacobian of Y^2 = F, F monic and squarefree of degree 2g+1 or 2g+2.
/// Odd degree: Cantor's algorithm.  Even degree: balanced representation,
/// reduced when deg u <= g and a, b >= 0, which is unique in its class.
template <class T>
class Jacobian {
 public:
  using Poly = Polynomial<T>;
  using Divisor = MumfordDivisor<T>;

  explicit Jacobian(Poly F) : F_(std::move(F)) {
    if (F_.degree() < 5) throw std::invalid_argument("genus must be at least 2");
    if (!F_.lc().is_one()) throw ArithmeticError("Jacobian model must be monic");
    split_ = F_.degree() % 2 == 0;
    g_ = split_ ? F_.degree() / 2 - 1 : (F_.degree() - 1) / 2;
    if (split_) V_ = sqrt_part();
  }

  int genus() const { return g_; }
  bool split() const { return split_; }
  const Poly& curve() const { return F_; }
  /// Polynomial part of sqrt(F) (split models).
  const Poly& sqrt_part_poly() const { return V_; }
  int a_inf() const { return (g_ + 1) / 2; }

  int b_of(const Divisor& D) const { return g_ - D.u.degree() - D.a; }

  Divisor zero() const { return {F_.one(), F_.zero(), split_ ? a_inf() : 0}; }

  bool is_zero(const Divisor& D) const { return D.u.degree() == 0 && (!split_ || D.a == a_inf()); }

  /// u monic, v^2 = F mod u, and the weights at infinity in range.
  bool is_valid(const Divisor& D) const {
    if (D.u.is_zero() || !D.u.lc().is_one()) return false;
    if (!D.v.is_zero() && D.v.degree() >= D.u.degree()) return false;
    if (!((D.v * D.v - F_) % D.u).is_zero()) return false;
    if (D.u.degree() > g_) return false;
    return !split_ || (D.a >= 0 && b_of(D) >= 0);
  }

  /// [P - inf+] (split) or [P - inf] (odd degree) for an affine point (x0, Y0).
  Divisor point(const T& x0, const T& Y0) const {
    if (!(Y0 * Y0 == F_(x0))) throw ArithmeticError("point is not on the curve");
    Poly u = Poly::x(x0) - Poly::constant(x0);
    return reduce({u, Poly::constant(Y0), split_ ? a_inf() - 1 : 0});
  }

  /// [inf- - inf+].
  Divisor infinity_difference() const {
    if (!split_) throw std::logic_error("only split models have two points at infinity");
    return {F_.one(), F_.zero(), a_inf() - 1};
  }

  /// [div(u, v) - (deg u / 2)(inf+ + inf-)] for even deg u, or with explicit
  /// weight a at inf+ otherwise; reduced.
  Divisor from_mumford(Poly u, Poly v, int a) const {
    u = u.monic();
    v = v % u;
    if (!((v * v - F_) % u).is_zero()) throw ArithmeticError("u does not divide v^2 - F");
    return reduce({u, v, a});
  }

  Divisor add(const Divisor& D1, const Divisor& D2) const { return reduce(compose(D1, D2)); }

  Divisor neg(const Divisor& D) const {
    Divisor r{D.u, (-D.v) % D.u, 0};
    if (split_) r.a = b_of(D) + (g_ % 2);
    return reduce(r);
  }

  Divisor sub(const Divisor& D1, const Divisor& D2) const { return add(D1, neg(D2)); }

  Divisor mul(const Divisor& D, Integer k) const {
    Divisor base = D;
    if (k < 0) {
      base = neg(D);
      k = -k;
    }
    Divisor r = zero();
    while (k > 0) {
      if (mpz_odd_p(k.get_mpz_t())) r = add(r, base);
      k >>= 1;
      if (k > 0) base = add(base, base);
    }
    return r;
  }

  bool equal(const Divisor& D1, const Divisor& D2) const {
    return D1.u == D2.u && D1.v == D2.v && (!split_ || D1.a == D2.a);
  }

  std::string key(const Divisor& D) const {
    std::string s;
    for (const auto& c : D.u.coeffs()) s += key_of(c) + ",";
    s += "|";
    for (const auto& c : D.v.coeffs()) s += key_of(c) + ",";
    if (split_) s += "|" + std::to_string(D.a);
    return s;
  }

  /// Cantor composition without reduction.
  Divisor compose(const Divisor& D1, const Divisor& D2) const {
    auto r1 = xgcd(D1.u, D2.u);
    auto r2 = xgcd(r1.g, D1.v + D2.v);
    const Poly& d = r2.g;
    Poly s1 = r2.s * r1.s, s2 = r2.s * r1.t, s3 = r2.t;
    Poly u = Poly::div_exact(D1.u * D2.u, d * d);
    Poly v = Poly::div_exact(s1 * D1.u * D2.v + s2 * D2.u * D1.v + s3 * (D1.v * D2.v + F_), d) % u;
    int a = split_ ? D1.a + D2.a + d.degree() - a_inf() : 0;
    return {u, v, a};
  }

  Divisor reduce(Divisor D) const {
    D.u = D.u.monic();
    D.v = D.v % D.u;
    if (!split_) {
      while (D.u.degree() > g_) {
        Poly u2 = Poly::div_exact(F_ - D.v * D.v, D.u).monic();
        D.v = (-D.v) % u2;
        D.u = std::move(u2);
      }
      return D;
    }
    while (D.u.degree() > g_) D = step(D, true);
    while (b_of(D) < 0) D = step(D, true);
    while (D.a < 0) D = step(D, false);
    return D;
  }

 private:
  /// One reduction step along Y - w, w = v mod u with w - V (plus) or w + V
  /// (minus) of degree < deg u.  The weights move by the orders of Y - w at
  /// the two points at infinity.
  Divisor step(const Divisor& D, bool plus) const {
    Poly w = plus ? V_ - ((V_ - D.v) % D.u) : -V_ - ((-V_ - D.v) % D.u);
    Poly Fw = F_ - w * w;
    Poly u2 = Poly::div_exact(Fw, D.u).monic();
    Poly vp = V_ + w, vm = V_ - w;
    int o_plus = vp.is_zero() ? -vm.degree() : vp.degree() - Fw.degree();
    int o_minus = vm.is_zero() ? -vp.degree() : vm.degree() - Fw.degree();
    int b = b_of(D);
    Divisor r{u2, (-w) % u2, D.a - u2.degree() - o_plus};
    if (b_of(r) != b - u2.degree() - o_minus) throw std::logic_error("balanced reduction lost degree");
    return r;
  }

  Poly sqrt_part() const {
    int g1 = g_ + 1;
    T two_inv = F_.lc().from_integer(Integer(2)).inverse();
    std::vector<T> c(static_cast<std::size_t>(g1) + 1, F_.zero_elem());
    c[static_cast<std::size_t>(g1)] = F_.lc().one();
    for (int k = g_; k >= 0; --k) {
      T s = F_.coeff(g1 + k);
      for (int i = k + 1; i <= g_; ++i) {
        int j = g1 + k - i;
        if (j > k && j <= g_) s -= c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)];
      }
      c[static_cast<std::size_t>(k)] = s * two_inv;
    }
    return Poly(std::move(c), F_.zero_elem());
  }

  Poly F_, V_;
  int g_ = 0;
  bool split_ = false;
};

}  // namespace x0quad
