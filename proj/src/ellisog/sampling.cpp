#include "x0quad/ellisog/sampling.hpp"

#include <stdexcept>

namespace x0quad {

Fq lift(const FieldPtr& F, const PrimeFieldElement& x) { return Fq::from_int(F, static_cast<std::int64_t>(x.value())); }

Polynomial<Fq> lift(const FieldPtr& F, const FpPoly& f) {
  std::vector<Fq> c;
  for (const auto& a : f.coeffs()) c.push_back(lift(F, a));
  return Polynomial<Fq>(c, Fq::from_int(F, 0));
}

ShortCurve<Fq> lift(const FieldPtr& F, const FpCurve& E) { return {lift(F, E.A), lift(F, E.B)}; }

bool lift_point(const FieldPtr& F, const FpCurve& E, const PrimeFieldElement& x0, CurvePoint<Fq>& P) {
  Fq X = lift(F, x0), Y;
  if (!field_sqrt(lift(F, E.rhs(x0)), Y)) return false;
  P = {false, X, Y};
  return true;
}

CurvePoint<Fq> random_point(const FieldPtr& F, const ShortCurve<Fq>& E, std::mt19937_64& rng) {
  while (true) {
    Fq x = random_element(F, rng), y;
    if (field_sqrt(E.rhs(x), y)) return {false, x, y};
  }
}

KernelInstance random_kernel_instance(std::uint64_t p, long ell, std::mt19937_64& rng) {
  if (ell < 3 || ell % 2 == 0) throw std::invalid_argument("kernel instances need an odd ell >= 3");
  auto F2 = FiniteField::standard(p, 2);
  auto fp = [p](std::uint64_t v) { return PrimeFieldElement(p, static_cast<std::int64_t>(v)); };
  while (true) {
    FpCurve E{fp(rng() % p), fp(rng() % p)};
    if (E.singular()) continue;
    FpPoly g = division_polynomial(E, ell);
    FpPoly x = FpPoly::x(fp(0));
    FpPoly lin = gcd(pow_mod(x, Integer(static_cast<unsigned long>(p)), g) - x, g);
    if (lin.degree() < 1) continue;
    PrimeFieldElement x0 = -equal_degree(lin.monic(), 1).front().coeff(0);
    CurvePoint<Fq> P;
    auto E2 = lift(F2, E);
    if (!lift_point(F2, E, x0, P)) continue;
    FpPoly psi = FpPoly::constant(fp(1));
    CurvePoint<Fq> Q = P;
    // x(kP) lies in F_p since the kernel is Frobenius-stable through x0.
    for (long k = 1; k <= (ell - 1) / 2; ++k) {
      if (Q.infinity || !Q.x.in_prime_field()) throw std::logic_error("kernel point left F_p");
      std::uint64_t v = Q.x.is_zero() ? 0 : Q.x.value()[0];
      psi = psi * (x - FpPoly::constant(fp(v)));
      Q = point_add(E2, Q, P);
    }
    if (!point_mul(E2, P, ell).infinity) throw std::logic_error("point order is not ell");
    return {E, psi, ell};
  }
}

}  // namespace x0quad
