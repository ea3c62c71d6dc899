#include "x0quad/qexp/eisenstein.hpp"

#include <stdexcept>

namespace x0quad {

Integer divisor_sigma(long k, long m) {
  Integer s = 0;
  for (long d = 1; d * d <= m; ++d) {
    if (m % d) continue;
    s += power(Integer(d), static_cast<unsigned long>(k));
    if (d * d != m) s += power(Integer(m / d), static_cast<unsigned long>(k));
  }
  return s;
}

QSeries eisenstein(int weight, long prec) {
  if (prec < 1) throw std::invalid_argument("precision must be positive");
  Rational c0;
  switch (weight) {
    case 2: c0 = Rational(-1, 24); break;
    case 4: c0 = Rational(1, 240); break;
    case 6: c0 = Rational(-1, 504); break;
    default: throw std::invalid_argument("unsupported Eisenstein weight");
  }
  QSeries e(1, prec);
  e.set(0, c0);
  for (long m = 1; m < prec; ++m) e.set(m, Rational(divisor_sigma(weight - 1, m)));
  return e;
}

QSeries eisenstein_e2d(long d, long prec) {
  if (d < 1) throw std::invalid_argument("E2^(d) needs d >= 1");
  QSeries e2 = eisenstein(2, prec);
  return e2 - e2.substitute_power(d, prec) * Rational(d);
}

QSeries a_gamma_series(const InvolutionSpec& inv, long prec) {
  if (inv.kind == InvolutionSpec::Kind::AtkinLehner) return eisenstein_e2d(inv.d, prec) * Rational(-2 * inv.d);
  if (inv.name == "beta40")
    return (eisenstein_e2d(5, prec) - eisenstein_e2d(10, prec) * Rational(3) + eisenstein_e2d(20, prec)) * Rational(40);
  if (inv.name == "beta48")
    return (eisenstein_e2d(3, prec) - eisenstein_e2d(6, prec) * Rational(3) + eisenstein_e2d(12, prec)) * Rational(24);
  throw std::invalid_argument("unsupported involution " + inv.name);
}

std::pair<QPoly, QPoly> s_m_rational(long m) {
  if (m < 1) throw std::invalid_argument("S_m needs m >= 1");
  const Rational one(1L);
  QPoly x = QPoly::x(one);
  QPoly xm = QPoly::monomial(one, static_cast<int>(m));
  QPoly a = QPoly::constant(one) - x;   // 1 - x
  QPoly b = QPoly::constant(one) - xm;  // 1 - x^m
  QPoly num = xm * a * a * Rational(m * m) - x * b * b;
  QPoly den = a * a * b * b;
  if (num.is_zero()) return {num, QPoly::constant(one)};
  QPoly g = gcd(num, den);
  num = QPoly::div_exact(num, g);
  den = QPoly::div_exact(den, g);
  Rational s = den.coeff(0).inverse();
  return {num * s, den * s};
}

Rational s_m_at_one(long m) {
  auto [num, den] = s_m_rational(m);
  Rational one(1L);
  Rational d1 = den(one);
  if (d1.is_zero()) throw ArithmeticError("S_m has a pole at 1");
  return num(one) / d1;
}

QSeries rational_function_series(const QPoly& num, const QPoly& den, long terms) {
  if (den.coeff(0).is_zero()) throw ArithmeticError("denominator vanishes at 0");
  Rational inv0 = den.coeff(0).inverse();
  std::vector<Rational> c(static_cast<std::size_t>(terms));
  for (long i = 0; i < terms; ++i) {
    Rational s = num.coeff(static_cast<int>(i));
    for (long j = 1; j <= i && j <= den.degree(); ++j) s -= den.coeff(static_cast<int>(j)) * c[static_cast<std::size_t>(i - j)];
    c[static_cast<std::size_t>(i)] = s * inv0;
  }
  QSeries r(1, terms);
  for (long i = 0; i < terms; ++i) r.set(i, c[static_cast<std::size_t>(i)]);
  return r;
}

QSeries s_m_taylor(long m, long terms) {
  QSeries r(1, terms);
  for (long l = 1; l * m < terms; ++l) r.add_to(l * m, Rational(m * m * l));
  for (long l = 1; l < terms; ++l) r.add_to(l, Rational(-l));
  return r;
}

CycloSeries s_m_cyclotomic(long m, long terms) {
  auto ring = CyclotomicRing::create(m);
  CycloSeries r(1, terms);
  // zeta x/(1 - zeta x)^2 = sum_l l zeta^l x^l
  for (long k = 1; k < m; ++k)
    for (long l = 1; l < terms; ++l) r.add_to(l, Cyclo::zeta_power(ring, k * l) * Rational(l));
  return r;
}

namespace {

/// sum_{n in Z} f(q^(n + e/2) zeta^j) with f(y) = y/(1-y)^2, exponents in units
/// of q^(1/2) below prec2.  Terms with negative exponent are folded through
/// f(y) = f(1/y); the n + e/2 = 0 term is the constant f(zeta^j).
void add_lattice_orbit(CycloSeries& acc, const CyclotomicPtr& ring, long e, long j, long prec2) {
  for (long t = e; t < prec2; t += 2) {  // t = 2n + e >= 0
    if (t == 0) {
      Cyclo z = Cyclo::zeta_power(ring, j);
      Cyclo one = z.one();
      Cyclo w = one - z;
      acc.add_to(0, z / (w * w));
      continue;
    }
    for (long l = 1; l * t < prec2; ++l) acc.add_to(l * t, Cyclo::zeta_power(ring, j * l) * Rational(l));
  }
  for (long t = 2 - e; t < prec2; t += 2) {  // t = -(2n + e) > 0, so zeta -> zeta^-1
    for (long l = 1; l * t < prec2; ++l) acc.add_to(l * t, Cyclo::zeta_power(ring, -j * l) * Rational(l));
  }
}

/// sum_{n >= start} S(q^((2n + e)/2)) from the Taylor expansion of S.
void add_folded(QSeries& acc, const QSeries& s, long e, long start, const Rational& scale, long prec2) {
  for (long t = 2 * start + e; t < prec2; t += 2)
    for (const auto& [l, c] : s.terms()) {
      if (l * t >= prec2) break;
      acc.add_to(l * t, c * scale);
    }
}

}  // namespace

LatticeSumResult a_gamma_lattice_oracle(NormalizerCase which, long prec, bool perturb) {
  if (prec < 2) throw std::invalid_argument("oracle precision must be at least 2");
  const long m = which == NormalizerCase::Beta40 ? 20 : 12;
  const long k = m / 2;
  const long prec2 = 2 * (prec + 1);  // q^0 .. q^prec in half-integral units
  LatticeSumResult res;

  InvolutionSpec inv = which == NormalizerCase::Beta40 ? InvolutionSpec::beta40() : InvolutionSpec::beta48();
  res.target = a_gamma_series(inv, prec + 1).with_denominator(2);
  QSeries e2 = eisenstein(2, prec + 1).with_denominator(2);
  QSeries head = e2 * Rational(-2 * (m - 1));

  // Direct: the nonzero points of C_gamma are g^j = q^(j/2) zeta_m^j, j = 1..m-1.
  auto ring = CyclotomicRing::create(m);
  CycloSeries lattice(2, prec2);
  for (long j = 1; j < m; ++j) add_lattice_orbit(lattice, ring, j % 2, j, prec2);
  res.descends = true;
  QSeries direct(2, prec2);
  for (const auto& [t, c] : lattice.terms()) {
    if (!c.is_rational()) res.descends = false;
    direct.set(t, c.rational_part());
  }
  res.direct = head + direct;
  if (perturb) res.direct.add_to(prec, Rational(1L));

  // Folded: S_k(1) + 2 sum_{n>=1} S_k(q^n) - 2 sum_{n>=0} S_k(q^(n+1/2)) + 2 sum_{n>=0} S_m(q^(n+1/2)).
  auto series_of = [&](long mm) {
    auto [num, den] = s_m_rational(mm);
    return rational_function_series(num, den, prec2);
  };
  QSeries sk = series_of(k), sm = series_of(m);
  QSeries folded(2, prec2);
  folded.add_to(0, s_m_at_one(k));
  add_folded(folded, sk, 0, 1, Rational(2), prec2);
  add_folded(folded, sk, 1, 0, Rational(-2), prec2);
  add_folded(folded, sm, 1, 0, Rational(2), prec2);
  res.folded = head + folded;

  auto d1 = first_difference(res.direct, res.target);
  auto d2 = first_difference(res.folded, res.target);
  res.direct_matches = !d1;
  res.folded_matches = !d2;
  if (d1 || d2) res.first_mismatch = std::min(d1.value_or(prec2), d2.value_or(prec2));
  res.equal = res.direct_matches && res.folded_matches && res.descends;
  return res;
}

}  // namespace x0quad
