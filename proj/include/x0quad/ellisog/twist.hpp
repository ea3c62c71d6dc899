#pragma once

#include <optional>
#include <string>

#include "x0quad/algebra/quadratic.hpp"
#include "x0quad/ellisog/curve.hpp"

namespace x0quad {

/// (sigma E)^(lambda): invariants (lambda^2 sigma(c4), lambda^3 sigma(c6)).
template <class T>
ShortCurve<T> conjugate_and_twist(const ShortCurve<T>& E, const T& lambda) {
  if (lambda.is_zero()) throw std::invalid_argument("twist parameter must be non-zero");
  T l2 = lambda * lambda;
  return {l2 * galois_conj(E.A), l2 * lambda * galois_conj(E.B)};
}

/// Square root in Q(sqrt d), if one exists.
std::optional<QuadraticFieldElement> quadratic_sqrt(const QuadraticFieldElement& x);
bool is_square(const QuadraticFieldElement& x);

struct TwistIsogenyData {
  QuadraticFieldElement mu, lambda;
  long delta = 0;
  /// L = K(sqrt lambda); equal to K when lambda is a square in K.
  bool lambda_is_square = false;
  /// -delta * Norm(mu), whose square class over K agrees with lambda's.
  Rational norm_class;
};

/// mu = 21 g6(P) c4 / (10 g4(P) c6), lambda = -delta sigma(mu)/mu.  Throws when
/// (240 g4/c4)^3 != (504 g6/c6)^2, i.e. the inputs do not come from one point.
TwistIsogenyData mu_lambda_L(const QuadraticFieldElement& g4P, const QuadraticFieldElement& g6P,
                             const QuadraticFieldElement& c4, const QuadraticFieldElement& c6, long delta);

}  // namespace x0quad
