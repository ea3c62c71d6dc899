#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "x0quad/algebra/factor.hpp"
#include "x0quad/algebra/polynomial.hpp"
#include "x0quad/algebra/prime_field.hpp"
#include "x0quad/qexp/involution.hpp"

namespace x0quad {

/// The prime is unusable for the model (even, divides the level, or the
/// discriminant of the completed form vanishes mod p).
class BadReduction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// y^2 + h(x) y = f(x) over Q.  With v = 2y + h this is v^2 = F = h^2 + 4f;
/// all the dataset's F have a square leading coefficient c^2, and Y = v/c
/// gives the monic form Y^2 = F/c^2 used for divisor arithmetic.
struct HyperellipticModel {
  long n = 0;
  QPoly h, f;
  InvolutionSpec involution;

  /// Validates that F is squarefree of degree >= 5.
  static HyperellipticModel make(long n, QPoly h, QPoly f, InvolutionSpec inv = {});

  QPoly completed() const { return h * h + f * Rational(4); }
  int genus() const;
  bool even_degree() const { return completed().degree() % 2 == 0; }
  /// c with c^2 = lc(F); throws when lc(F) is not a rational square.
  Rational infinity_scale() const;
  /// F / c^2 (monic) for even degree; F / lc(F) for odd degree.
  QPoly monic_form() const;
  /// h(x)^2 + 4 f(x) at a rational x.
  Rational delta_at(const Rational& x) const { return completed()(x); }
};

struct ReducedModel {
  std::uint64_t p = 0;
  int genus = 0;
  FpPoly F;      // completed form mod p
  FpPoly monic;  // monic form mod p
  PrimeFieldElement c;
};

/// Coefficientwise reduction with a good-reduction certificate (gcd(F, F') = 1 mod p).
ReducedModel reduce_model(const HyperellipticModel& m, std::uint64_t p);
bool has_good_reduction(const HyperellipticModel& m, std::uint64_t p);
/// Odd primes in [lo, hi] of good reduction, ascending.
std::vector<std::uint64_t> good_primes(const HyperellipticModel& m, std::uint64_t lo, std::uint64_t hi);

/// #X(F_{p^k}) on the smooth model v^2 = F (affine points plus points at infinity).
long count_points(const ReducedModel& m, int k);
/// Same count for an arbitrary squarefree F over F_p.
long count_points(const FpPoly& F, int k);

struct LPolynomial {
  std::uint64_t p = 0;
  std::vector<Integer> a;  // a_0 .. a_2g
  Integer at_one() const;
  int genus() const { return static_cast<int>(a.size() - 1) / 2; }
};

/// From the counts over F_{p^k}, k = 1..g, by Newton's identities; the upper
/// half comes from the functional equation.  Throws if a count breaks the Weil bound.
LPolynomial l_polynomial(const ReducedModel& m);
LPolynomial l_polynomial_from_counts(std::uint64_t p, int g, const std::vector<long>& counts);

struct RationalPoint {
  bool at_infinity = false;
  int sign = 0;  // +1 / -1 for the points at infinity (Y/x^(g+1) -> +-1)
  Rational x, y;
  std::string str() const;
  friend bool operator==(const RationalPoint&, const RationalPoint&) = default;
};

/// All points with x = a/b, |a|, |b| <= H, plus the rational points at infinity.
std::vector<RationalPoint> rational_point_search(const HyperellipticModel& m, long H);
/// Number of rational cusps of X_0(n): divisors d with gcd(d, n/d) <= 2.
long rational_cusp_count(long n);

}  // namespace x0quad
