#include "x0quad/ellisog/twist.hpp"

namespace x0quad {

std::optional<QuadraticFieldElement> quadratic_sqrt(const QuadraticFieldElement& x) {
  if (x.is_zero()) return x;
  Rational d(x.d()), s, t;
  if (x.b().is_zero()) {
    if (rational_sqrt(x.a(), s)) return x.embed(s);
    // a = d t^2 makes t*w a root.
    if (rational_sqrt(x.a() / d, t)) return QuadraticFieldElement(x.d(), Rational(), t);
    return std::nullopt;
  }
  // (s + t w)^2 = a + b w: s^2 + d t^2 = a, 2 s t = b, so s^2 = (a +- sqrt(N))/2.
  Rational n;
  if (!rational_sqrt(x.norm(), n)) return std::nullopt;
  for (const Rational& cand : {(x.a() + n) / Rational(2), (x.a() - n) / Rational(2)}) {
    if (cand.is_zero() || !rational_sqrt(cand, s)) continue;
    QuadraticFieldElement r(x.d(), s, x.b() / (s * Rational(2)));
    if (r * r == x) return r;
  }
  return std::nullopt;
}

bool is_square(const QuadraticFieldElement& x) { return quadratic_sqrt(x).has_value(); }

TwistIsogenyData mu_lambda_L(const QuadraticFieldElement& g4P, const QuadraticFieldElement& g6P,
                             const QuadraticFieldElement& c4, const QuadraticFieldElement& c6, long delta) {
  if (g4P.is_zero() || g6P.is_zero() || c4.is_zero() || c6.is_zero())
    throw std::invalid_argument("mu is defined only for non-zero g4, g6, c4, c6");
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  auto k = [&](long v) { return c4.embed(Rational(v)); };
  QuadraticFieldElement u = k(240) * g4P / c4, v = k(504) * g6P / c6;
  if (!(u * u * u == v * v)) throw std::invalid_argument("g4, g6 and c4, c6 do not come from one point");
  TwistIsogenyData t;
  t.delta = delta;
  t.mu = k(21) * g6P * c4 / (k(10) * g4P * c6);
  t.lambda = -k(delta) * galois_conj(t.mu) / t.mu;
  t.lambda_is_square = is_square(t.lambda);
  t.norm_class = -Rational(delta) * t.mu.norm();
  return t;
}

}  // namespace x0quad
