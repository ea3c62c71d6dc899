#pragma once

#include <cstdint>
#include <random>

#include "x0quad/algebra/factor.hpp"
#include "x0quad/algebra/finite_field.hpp"
#include "x0quad/ellisog/curve.hpp"

namespace x0quad {

using FpCurve = ShortCurve<PrimeFieldElement>;

Fq lift(const FieldPtr& F, const PrimeFieldElement& x);
Polynomial<Fq> lift(const FieldPtr& F, const FpPoly& f);
ShortCurve<Fq> lift(const FieldPtr& F, const FpCurve& E);

/// A point of E over F with x-coordinate x0 in F_p, if y^2 = rhs(x0) is solvable in F.
bool lift_point(const FieldPtr& F, const FpCurve& E, const PrimeFieldElement& x0, CurvePoint<Fq>& P);
CurvePoint<Fq> random_point(const FieldPtr& F, const ShortCurve<Fq>& E, std::mt19937_64& rng);

struct KernelInstance {
  FpCurve E;
  FpPoly psi;  // product of (x - x(kP)), k = 1..(ell-1)/2
  long ell = 0;
};

/// Random curve over F_p with an ell-torsion point whose x-coordinate is in F_p;
/// the kernel polynomial comes from explicit multiples of that point.
KernelInstance random_kernel_instance(std::uint64_t p, long ell, std::mt19937_64& rng);

}  // namespace x0quad
