#pragma once

#include <stdexcept>

#include "x0quad/algebra/finite_field.hpp"
#include "x0quad/algebra/polynomial.hpp"
#include "x0quad/algebra/prime_field.hpp"
#include "x0quad/algebra/quadratic.hpp"
#include "x0quad/algebra/rational.hpp"

namespace x0quad {

/// The non-trivial automorphism of a quadratic base field; identity elsewhere.
inline Rational galois_conj(const Rational& x) { return x; }
inline PrimeFieldElement galois_conj(const PrimeFieldElement& x) { return x; }
inline FiniteFieldElement galois_conj(const FiniteFieldElement& x) { return x; }
inline QuadraticFieldElement galois_conj(const QuadraticFieldElement& x) { return x.conj(); }

template <class T>
struct Invariants {
  T b2, b4, b6, b8, c4, c6, disc, j;
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with the differential dx/(2y + a1 x + a3).
template <class T>
struct EllipticCurve {
  T a1, a2, a3, a4, a6;

  Invariants<T> invariants() const {
    Invariants<T> I;
    auto k = [&](long v) { return a4.from_integer(Integer(v)); };
    I.b2 = a1 * a1 + k(4) * a2;
    I.b4 = k(2) * a4 + a1 * a3;
    I.b6 = a3 * a3 + k(4) * a6;
    I.b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    I.c4 = I.b2 * I.b2 - k(24) * I.b4;
    I.c6 = -(I.b2 * I.b2 * I.b2) + k(36) * I.b2 * I.b4 - k(216) * I.b6;
    I.disc = -(I.b2 * I.b2 * I.b8) - k(8) * I.b4 * I.b4 * I.b4 - k(27) * I.b6 * I.b6 + k(9) * I.b2 * I.b4 * I.b6;
    if (I.disc.is_zero()) throw ArithmeticError("singular Weierstrass model");
    I.j = I.c4 * I.c4 * I.c4 / I.disc;
    return I;
  }
};

/// y^2 = x^3 + A x + B with the differential dx/2y.
template <class T>
struct ShortCurve {
  T A, B;

  T discriminant() const {
    auto k = [&](long v) { return A.from_integer(Integer(v)); };
    return -k(16) * (k(4) * A * A * A + k(27) * B * B);
  }
  bool singular() const { return discriminant().is_zero(); }
  T c4() const { return -A.from_integer(Integer(48)) * A; }
  T c6() const { return -A.from_integer(Integer(864)) * B; }
  T j() const {
    T d = discriminant();
    if (d.is_zero()) throw ArithmeticError("singular curve");
    return c4() * c4() * c4() / d;
  }
  T rhs(const T& x) const { return x * x * x + A * x + B; }
  Polynomial<T> rhs_poly() const {
    return Polynomial<T>(std::vector<T>{B, A, A.zero(), A.one()}, A);
  }
  friend bool operator==(const ShortCurve& a, const ShortCurve& b) { return a.A == b.A && a.B == b.B; }
};

/// Short form through x_s = x + b2/12, y_s = y + (a1 x + a3)/2; the differential is preserved.
template <class T>
ShortCurve<T> short_form(const EllipticCurve<T>& E) {
  auto I = E.invariants();
  return {-I.c4 / I.c4.from_integer(Integer(48)), -I.c6 / I.c6.from_integer(Integer(864))};
}

/// Shift x -> x + b2/12 taking long-model x-coordinates to short ones.
template <class T>
T short_shift(const EllipticCurve<T>& E) {
  return E.invariants().b2 / E.a1.from_integer(Integer(12));
}

/// Affine point or the point at infinity.
template <class T>
struct CurvePoint {
  bool infinity = true;
  T x, y;
};

template <class T>
bool on_curve(const ShortCurve<T>& E, const CurvePoint<T>& P) {
  return P.infinity || P.y * P.y == E.rhs(P.x);
}

template <class T>
CurvePoint<T> point_neg(const CurvePoint<T>& P) {
  return P.infinity ? P : CurvePoint<T>{false, P.x, -P.y};
}

template <class T>
CurvePoint<T> point_add(const ShortCurve<T>& E, const CurvePoint<T>& P, const CurvePoint<T>& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  T m;
  if (P.x == Q.x) {
    if ((P.y + Q.y).is_zero()) return {};
    m = (P.x * P.x * P.x.from_integer(Integer(3)) + E.A) / (P.y + P.y);
  } else {
    m = (Q.y - P.y) / (Q.x - P.x);
  }
  T x = m * m - P.x - Q.x;
  return {false, x, m * (P.x - x) - P.y};
}

template <class T>
CurvePoint<T> point_mul(const ShortCurve<T>& E, CurvePoint<T> P, long k) {
  if (k < 0) return point_mul(E, point_neg(P), -k);
  CurvePoint<T> R;
  while (k) {
    if (k & 1) R = point_add(E, R, P);
    k >>= 1;
    if (k) P = point_add(E, P, P);
  }
  return R;
}

/// psi_n for odd n, psi_n / 2y for even n, as polynomials in x.
template <class T>
Polynomial<T> division_polynomial(const ShortCurve<T>& E, long n) {
  using P = Polynomial<T>;
  if (n < 0) throw std::invalid_argument("division polynomial index must be non-negative");
  const T& A = E.A;
  const T& B = E.B;
  auto k = [&](long v) { return A.from_integer(Integer(v)); };
  P R = E.rhs_poly() * k(4);
  P R2 = R * R;
  std::vector<P> g;
  g.push_back(P(A));
  g.push_back(P::constant(A.one()));
  g.push_back(P::constant(A.one()));
  g.push_back(P(std::vector<T>{-(A * A), k(12) * B, k(6) * A, A.zero(), k(3)}, A));
  g.push_back(P(std::vector<T>{k(-2) * (k(8) * B * B + A * A * A), k(-8) * A * B, k(-10) * A * A, k(40) * B, k(10) * A, A.zero(), k(2)}, A));
  for (long m = 5; m <= n; ++m) {
    long h = m / 2;
    auto at = [&](long i) -> const P& { return g[static_cast<std::size_t>(i)]; };
    if (m % 2) {
      P s = at(h + 2) * at(h) * at(h) * at(h), t = at(h - 1) * at(h + 1) * at(h + 1) * at(h + 1);
      g.push_back(h % 2 == 0 ? R2 * s - t : s - R2 * t);
    } else {
      g.push_back(at(h) * (at(h + 2) * at(h - 1) * at(h - 1) - at(h - 2) * at(h + 1) * at(h + 1)));
    }
  }
  return g[static_cast<std::size_t>(n)];
}

}  // namespace x0quad
