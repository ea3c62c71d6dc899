#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "x0quad/algebra/finite_field.hpp"
#include "x0quad/algebra/polynomial.hpp"
#include "x0quad/algebra/prime_field.hpp"
#include "x0quad/algebra/quadratic.hpp"

namespace x0quad {

using FpPoly = Polynomial<PrimeFieldElement>;
using KPoly = Polynomial<QuadraticFieldElement>;

/// unit * prod(factor^multiplicity); factors monic and irreducible.
template <class T>
struct Factorization {
  T unit;
  std::vector<std::pair<Polynomial<T>, int>> factors;

  Polynomial<T> expand() const {
    Polynomial<T> r = Polynomial<T>::constant(unit);
    for (const auto& [f, m] : factors) r = r * poly_pow(f, static_cast<unsigned long>(m));
    return r;
  }
  int count() const {
    int c = 0;
    for (const auto& fm : factors) c += fm.second;
    return c;
  }
};

/// Reduction of a rational polynomial modulo p (throws if p divides a denominator).
FpPoly reduce_poly(const QPoly& f, std::uint64_t p);
/// Polynomial with the given integer coefficients over F_p.
FpPoly fp_poly(std::uint64_t p, std::initializer_list<long> coeffs);

/// Squarefree decomposition over F_p: pairs (g_i, i), g_i squarefree and monic.
std::vector<std::pair<FpPoly, int>> squarefree_decomposition(const FpPoly& f);
/// Distinct-degree factorization of a monic squarefree polynomial: (product, degree).
std::vector<std::pair<FpPoly, int>> distinct_degree(const FpPoly& f);
/// Equal-degree splitting (Cantor–Zassenhaus) of a product of degree-d irreducibles.
std::vector<FpPoly> equal_degree(const FpPoly& f, int d);

Factorization<PrimeFieldElement> factor_over_Fp(const FpPoly& f);
bool is_irreducible(const FpPoly& f);

/// Zassenhaus: factor mod the smallest odd good prime, Hensel lift past the
/// Landau–Mignotte bound, recombine.
Factorization<Rational> factor_over_Q(const QPoly& f);

/// Factors of a squarefree rational polynomial over Q(sqrt d) (Trager's norm method).
Factorization<QuadraticFieldElement> factor_over_quadratic_field(const QPoly& f, const Integer& d);

KPoly to_kpoly(const QPoly& f, const Integer& d);
/// Conjugate coefficientwise.
KPoly conj(const KPoly& f);

/// Number of distinct real roots via the Sturm sequence of the squarefree part.
int sturm_real_roots(const QPoly& f);
/// Distinct real roots in the half-open interval (a, b].
int sturm_real_roots(const QPoly& f, const Rational& a, const Rational& b);

/// Elementary divisors (e1, e2) of a 2x2 integer matrix with positive determinant.
std::pair<Integer, Integer> snf_2x2(const std::array<std::array<long, 2>, 2>& m);

/// Square roots of d mod p, smallest first (empty for non-residues).
std::vector<std::uint64_t> sqrt_mod_p(const Integer& d, std::uint64_t p);

/// a + b*w reduced mod p.  For split or ramified p, w maps to the smallest
/// square root r of d mod p and the result lies in F_p (degree-1 field);
/// for inert p the result lies in F_{p^2} = F_p[t]/(t^2 - d) with w -> t.
FiniteFieldElement reduce_mod_prime(const QuadraticFieldElement& x, std::uint64_t p);
/// Reduction with an explicit choice of root r (r^2 = d mod p).
PrimeFieldElement reduce_mod_prime(const QuadraticFieldElement& x, std::uint64_t p, std::uint64_t r);

}  // namespace x0quad
