#pragma once

#include <stdexcept>
#include <vector>

#include "x0quad/ellisog/curve.hpp"

namespace x0quad {

/// X(x) = num/psi^2, Y = y X'(x): the normalized isogeny with kernel psi.
template <class T>
struct IsogenyMap {
  Polynomial<T> num, psi;

  CurvePoint<T> operator()(const CurvePoint<T>& P) const {
    if (P.infinity) return P;
    T px = psi.eval_in(P.x);
    if (px.is_zero()) return {};
    Polynomial<T> dpsi = psi.derivative();
    T n = num.eval_in(P.x), dn = num.derivative().eval_in(P.x), dp = dpsi.eval_in(P.x);
    T X = n / (px * px);
    T two = P.x.from_integer(Integer(2));
    T dX = (dn * px - two * n * dp) / (px * px * px);
    return {false, X, P.y * dX};
  }
};

template <class T>
struct VeluResult {
  ShortCurve<T> codomain;
  IsogenyMap<T> map;
  long ell = 1;
};

/// True when psi is monic, squarefree and divides the ell-division polynomial.
template <class T>
bool is_kernel_polynomial(const ShortCurve<T>& E, const Polynomial<T>& psi) {
  if (psi.is_zero() || !psi.lc().is_one()) return false;
  if (psi.degree() == 0) return true;
  if (!is_squarefree(psi)) return false;
  long ell = 2L * psi.degree() + 1;
  return (division_polynomial(E, ell) % psi).is_zero();
}

/// Velu's formulas for an odd-order kernel given by its x-coordinate polynomial.
template <class T>
VeluResult<T> velu(const ShortCurve<T>& E, const Polynomial<T>& psi, bool check_kernel = true) {
  using P = Polynomial<T>;
  if (E.singular()) throw ArithmeticError("singular domain curve");
  if (check_kernel && !is_kernel_polynomial(E, psi)) throw std::invalid_argument("not a kernel polynomial");
  const T& A = E.A;
  const T& B = E.B;
  auto k = [&](long v) { return A.from_integer(Integer(v)); };
  long m = psi.degree();
  // Power sums of the roots by Newton's identities.
  T e1 = -psi.coeff(static_cast<int>(m) - 1), e2 = psi.coeff(static_cast<int>(m) - 2), e3 = -psi.coeff(static_cast<int>(m) - 3);
  T p1 = e1, p2 = e1 * p1 - k(2) * e2, p3 = e1 * p2 - e2 * p1 + k(3) * e3;
  // Sums over all 2m non-zero kernel points.
  T t = k(6) * p2 + k(2 * m) * A;
  T w = k(10) * p3 + k(6) * A * p1 + k(4 * m) * B;
  VeluResult<T> r;
  r.ell = 2 * m + 1;
  r.codomain = {A - k(5) * t, B - k(7) * w};
  // X = x + sum_r (6r^2 + 2A)/(x - r) + 4(r^3 + Ar + B)/(x - r)^2.
  P x = P::x(A), dpsi = psi.derivative();
  P g = P(std::vector<T>{k(2) * A, A.zero(), k(6)}, A);
  P h = E.rhs_poly() * k(4);
  P R = (g * dpsi) % psi, S = (h * dpsi) % psi;
  r.map = {x * psi * psi + R * psi - S.derivative() * psi + S * dpsi, psi};
  return r;
}

/// Coefficients 1, 0, c_1, c_2, ... of I(x)/x in z = 1/x, where I solves
/// I'(x)^2 (x^3 + A x + B) = I^3 + A' I + B' with I = x + O(1/x).
template <class T>
std::vector<T> isogeny_series(const ShortCurve<T>& E, const ShortCurve<T>& E2, std::size_t terms) {
  const T zero = E.A.zero();
  auto k = [&](long v) { return E.A.from_integer(Integer(v)); };
  std::vector<T> p(terms, zero);
  p[0] = E.A.one();
  std::vector<T> lhs_base(terms, zero);  // 1 + A z^2 + B z^3
  lhs_base[0] = E.A.one();
  if (terms > 2) lhs_base[2] = E.A;
  if (terms > 3) lhs_base[3] = E.B;
  auto coeff_of_residual = [&](std::size_t n) {
    // [z^n] of (P - zP')^2 (1 + A z^2 + B z^3) - P^3 - A' z^2 P - B' z^3
    std::vector<T> q(n + 1, zero), q2(n + 1, zero), p2(n + 1, zero);
    for (std::size_t i = 0; i <= n; ++i) q[i] = p[i] * k(1 - static_cast<long>(i));
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; i + j <= n; ++j) {
        q2[i + j] += q[i] * q[j];
        p2[i + j] += p[i] * p[j];
      }
    T s = zero;
    for (std::size_t i = 0; i <= n; ++i) s += q2[i] * lhs_base[n - i];
    for (std::size_t i = 0; i <= n; ++i) s -= p2[i] * p[n - i];
    if (n >= 2) s -= E2.A * p[n - 2];
    if (n == 3) s -= E2.B;
    return s;
  };
  for (std::size_t n = 2; n < terms; ++n) {
    long kk = static_cast<long>(n) - 1;  // p[n] = c_kk
    T denom = k(2 * kk + 3);
    if (denom.is_zero()) throw ArithmeticError("characteristic too small for the isogeny series");
    p[n] = coeff_of_residual(n) / denom;
  }
  return p;
}

/// Kernel polynomial of the normalized ell-isogeny E -> E2, recovered from the
/// series solution by rational reconstruction I = N/D, D = psi^2.
template <class T>
Polynomial<T> kernel_from_curves(const ShortCurve<T>& E, const ShortCurve<T>& E2, long ell) {
  using P = Polynomial<T>;
  if (ell < 1 || ell % 2 == 0) throw std::invalid_argument("isogeny degree must be odd");
  if (E.singular() || E2.singular()) throw ArithmeticError("singular curve");
  if (ell == 1) {
    if (!(E == E2)) throw std::invalid_argument("curves are not related by a normalized isogeny of degree 1");
    return P::constant(E.A.one());
  }
  std::size_t M = static_cast<std::size_t>(2 * ell), extra = M + 4;
  auto series = isogeny_series(E, E2, extra);
  const T& proto = E.A;
  P s(std::vector<T>(series.begin(), series.begin() + static_cast<long>(M)), proto);
  // Extended Euclid on (z^M, s) until the remainder has degree <= ell.
  P r0 = P::monomial(proto.one(), static_cast<int>(M)), r1 = s, t0 = P(proto), t1 = P::constant(proto.one());
  while (r1.degree() > ell) {
    auto [q, r] = P::divmod(r0, r1);
    P t = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  P Dt = t1;
  if (Dt.is_zero() || Dt.coeff(0).is_zero() || Dt.degree() > ell - 1)
    throw std::invalid_argument("curves are not related by a normalized isogeny of this degree");
  T c = Dt.coeff(0).inverse();
  Dt = Dt * c;
  P Nt = r1 * c;
  // The approximant must persist through the extra terms.
  P full(std::vector<T>(series.begin(), series.end()), proto);
  P chk = full * Dt - Nt;
  for (std::size_t i = 0; i < extra; ++i)
    if (!chk.coeff(static_cast<int>(i)).is_zero())
      throw std::invalid_argument("curves are not related by a normalized isogeny of this degree");
  // D(x) = x^(ell-1) Dt(1/x).
  std::vector<T> dc(static_cast<std::size_t>(ell), proto.zero());
  for (long i = 0; i < ell; ++i) dc[static_cast<std::size_t>(i)] = Dt.coeff(static_cast<int>(ell - 1 - i));
  P D(dc, proto);
  // Monic square root.
  long m = (ell - 1) / 2;
  T two_inv = proto.from_integer(Integer(2)).inverse();
  std::vector<T> root(static_cast<std::size_t>(m) + 1, proto.zero());
  root[static_cast<std::size_t>(m)] = proto.one();
  for (long i = m - 1; i >= 0; --i) {
    T acc = D.coeff(static_cast<int>(m + i));
    for (long a = i + 1; a <= m; ++a) {
      long b = m + i - a;
      if (b > i && b <= m) acc -= root[static_cast<std::size_t>(a)] * root[static_cast<std::size_t>(b)];
    }
    root[static_cast<std::size_t>(i)] = acc * two_inv;
  }
  P psi(root, proto);
  if (!(psi * psi == D)) throw std::invalid_argument("isogeny denominator is not a square");
  return psi;
}

}  // namespace x0quad
