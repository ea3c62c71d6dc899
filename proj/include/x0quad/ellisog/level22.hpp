#pragma once

#include <map>
#include <string>
#include <vector>

#include "x0quad/ellisog/twist.hpp"
#include "x0quad/ellisog/velu.hpp"
#include "x0quad/modcurvedb/database.hpp"

namespace x0quad {

using KCurve = ShortCurve<QuadraticFieldElement>;

/// A_gamma(E, C, omega) = -2 * 11 * E2^(11)-factor(x) / mu at a point of X_0(22).
/// `omega_scale` c evaluates at c*omega (weight 2: multiplies by c^-2).
QuadraticFieldElement evaluate_a_gamma_at_point(const Level22Data& data, const QuadraticFieldElement& xP,
                                                const QuadraticFieldElement& mu,
                                                const QuadraticFieldElement& omega_scale);

/// True iff j is a root of the stored class polynomial of discriminant D.
bool cm_check(const Database& db, const QuadraticFieldElement& j, long D);

struct Isogeny22Certificate {
  Rational x;
  long d = 0;  // squarefree part of h(x)^2 + 4 f(x)
  QuadraticFieldElement y;
  QuadraticFieldElement g4, g6;
  KCurve E, E_twist;  // E and (sigma E)^(lambda)
  TwistIsogenyData twist;
  QuadraticFieldElement a_gamma_root_sum;  // sum of short x over the kernel points
  QuadraticFieldElement a_gamma_formula;   // from the stored E2^(11) expression
  KPoly kernel;                            // short coordinates
  KCurve velu_codomain;
  bool codomain_matches = false;
  std::vector<std::uint64_t> division_primes;  // split primes where kernel | psi_11 was checked
  bool divides_division_polynomial = false;

  // Filled for the stored example (x = -1).
  bool has_reference = false;
  bool reference_mu = false, reference_lambda = false, reference_a_gamma = false, reference_kernel = false;
  QuadraticFieldElement reference_curve_mu;  // mu against the printed long model
};

/// The full twist-isogeny certificate at a point with rational x on X_0(22);
/// `branch` = +1 / -1 picks y = (-h(x) +- sqrt(disc))/2.
Isogeny22Certificate isogeny22_pipeline(const Database& db, const Rational& x, int branch = 1);

nlohmann::ordered_json to_json(const Isogeny22Certificate& c);

}  // namespace x0quad
