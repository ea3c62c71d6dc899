#pragma once

#include <optional>
#include <utility>

#include "x0quad/algebra/polynomial.hpp"
#include "x0quad/qexp/cyclotomic.hpp"
#include "x0quad/qexp/involution.hpp"
#include "x0quad/qexp/series.hpp"

namespace x0quad {

using QSeries = TruncatedSeries<Rational>;
using CycloSeries = TruncatedSeries<CyclotomicRingElement>;

Integer divisor_sigma(long k, long m);

/// E_2 = -1/24 + sum sigma_1(m) q^m, E_4 = 1/240 + ..., E_6 = -1/504 + ...;
/// exponents 0 .. prec-1.
QSeries eisenstein(int weight, long prec);
/// E_2^(d)(q) = E_2(q) - d E_2(q^d).
QSeries eisenstein_e2d(long d, long prec);
/// -2d E_2^(d) for w_d; the two exceptional combinations for beta40, beta48.
QSeries a_gamma_series(const InvolutionSpec& inv, long prec);

/// S_m = m^2 x^m/(1-x^m)^2 - x/(1-x)^2 as a reduced fraction (num, den), den(0) = 1.
std::pair<QPoly, QPoly> s_m_rational(long m);
/// Value at x = 1 of the reduced fraction.
Rational s_m_at_one(long m);
/// Taylor expansion of num/den at 0 through x^(terms-1).
QSeries rational_function_series(const QPoly& num, const QPoly& den, long terms);
/// m^2 sum l x^(lm) - sum l x^l through x^(terms-1).
QSeries s_m_taylor(long m, long terms);
/// sum_{k=1}^{m-1} zeta^k x/(1 - zeta^k x)^2 expanded with coefficients in Q(zeta_m).
CycloSeries s_m_cyclotomic(long m, long terms);

/// Which exceptional normalizer: the subgroup C_gamma on the Tate curve is
/// cyclic of order 20 (resp. 12), generated by q^(1/2) zeta.
enum class NormalizerCase { Beta40, Beta48 };

struct LatticeSumResult {
  bool equal = false;
  /// The direct lattice sum collapses to rational coefficients.
  bool descends = false;
  bool direct_matches = false;
  bool folded_matches = false;
  /// Exponent (in units of q^(1/2)) of the first mismatch, if any.
  std::optional<long> first_mismatch;
  QSeries target{2, 0};
  QSeries direct{2, 0};
  QSeries folded{2, 0};
};

/// Compares a_gamma_series with (i) the lattice sum over C_gamma \ {0} of the
/// Tate-curve x-coordinate, evaluated in Q(zeta_m)((q^(1/2))), and (ii) the same
/// sum folded through the S_m identities; coefficients through q^prec.
/// `perturb` adds 1 to the coefficient of q^(prec/2) on the direct side.
LatticeSumResult a_gamma_lattice_oracle(NormalizerCase which, long prec, bool perturb = false);

}  // namespace x0quad
