#include "x0quad/ellisog/level22.hpp"

#include "x0quad/algebra/factor.hpp"

namespace x0quad {

namespace {

constexpr long kEll = 11;

FpPoly reduce_kpoly(const KPoly& f, std::uint64_t p, std::uint64_t r) {
  std::vector<PrimeFieldElement> c;
  for (const auto& a : f.coeffs()) c.push_back(reduce_mod_prime(a, p, r));
  return FpPoly(c, PrimeFieldElement(p, 0));
}

}  // namespace

QuadraticFieldElement evaluate_a_gamma_at_point(const Level22Data& data, const QuadraticFieldElement& xP,
                                                const QuadraticFieldElement& mu,
                                                const QuadraticFieldElement& omega_scale) {
  if (mu.is_zero() || omega_scale.is_zero()) throw std::invalid_argument("mu and the differential scale must be non-zero");
  QuadraticFieldElement e2 = data.e2_poly.eval_in(xP) * xP.embed(data.e2_scale);
  return xP.embed(Rational(-2 * kEll)) * e2 / mu / (omega_scale * omega_scale);
}

bool cm_check(const Database& db, const QuadraticFieldElement& j, long D) {
  auto it = db.class_polynomials.find(D);
  if (it == db.class_polynomials.end()) throw std::invalid_argument("no class polynomial stored for D = " + std::to_string(D));
  return it->second.eval_in(j).is_zero();
}

Isogeny22Certificate isogeny22_pipeline(const Database& db, const Rational& x, int branch) {
  if (branch != 1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
  const CurveRecord& rec = db.curve(22);
  HyperellipticModel m = rec.model();
  const Level22Data& L = db.n22;
  Isogeny22Certificate c;
  c.x = x;
  Rational disc = m.delta_at(x);
  Rational s;
  if (disc.is_zero() || rational_sqrt(disc, s)) throw std::invalid_argument("the fibre over x consists of rational points");
  Integer d = squarefree_kernel(disc);
  c.d = d.get_si();
  if (!rational_sqrt(disc / Rational(d), s)) throw std::logic_error("squarefree kernel is inconsistent");
  QuadraticFieldElement w(d, Rational(), Rational(1L)), one(d, Rational(1L));
  auto K = [&](const Rational& r) { return one.embed(r); };
  c.y = (K(-m.h(x)) + w * K(s * Rational(branch))) * K(Rational(1, 2));
  if (!residual(m, K(x), c.y).is_zero()) throw std::logic_error("constructed point is not on the model");

  c.g4 = (K(L.g4_y0(x)) + K(L.g4_y1(x)) * c.y) * K(L.g4_scale);
  c.g6 = (K(L.g6_y0(x)) + K(L.g6_y1(x)) * c.y) * K(L.g6_scale);
  c.E = {K(Rational(-5)) * c.g4, K(Rational(-7, 12)) * c.g6};
  c.twist = mu_lambda_L(c.g4, c.g6, c.E.c4(), c.E.c6(), rec.delta);
  c.E_twist = conjugate_and_twist(c.E, c.twist.lambda);
  c.kernel = kernel_from_curves(c.E, c.E_twist, kEll);
  c.a_gamma_root_sum = -c.kernel.coeff(c.kernel.degree() - 1) * K(Rational(2));
  c.a_gamma_formula = evaluate_a_gamma_at_point(L, K(x), c.twist.mu, one);
  auto vr = velu(c.E, c.kernel, false);
  c.velu_codomain = vr.codomain;
  c.codomain_matches = vr.codomain == c.E_twist;

  // kernel | psi_11 after reduction at split primes.
  c.divides_division_polynomial = true;
  for (std::uint64_t p = 13; c.division_primes.size() < 2 && p < 1000; p += 2) {
    if (!is_prime(p) || d % static_cast<unsigned long>(p) == 0) continue;
    auto roots = sqrt_mod_p(d, p);
    if (roots.empty()) continue;
    try {
      PrimeFieldElement A = reduce_mod_prime(c.E.A, p, roots[0]), B = reduce_mod_prime(c.E.B, p, roots[0]);
      ShortCurve<PrimeFieldElement> Ep{A, B};
      if (Ep.singular()) continue;
      FpPoly kp = reduce_kpoly(c.kernel, p, roots[0]);
      c.divides_division_polynomial = c.divides_division_polynomial && is_kernel_polynomial(Ep, kp);
      c.division_primes.push_back(p);
    } catch (const ArithmeticError&) {
      continue;
    }
  }
  if (c.division_primes.size() < 2) c.divides_division_polynomial = false;

  const auto& ex = L.example;
  if (x == ex.x && c.d == ex.d && c.y == ex.y) {
    c.has_reference = true;
    EllipticCurve<QuadraticFieldElement> Eref{ex.a1, ex.a2, ex.a3, ex.a4, ex.a6};
    auto I = Eref.invariants();
    auto tref = mu_lambda_L(c.g4, c.g6, I.c4, I.c6, rec.delta);
    c.reference_curve_mu = tref.mu;
    c.reference_mu = tref.mu == ex.mu && c.twist.mu == ex.mu;
    c.reference_lambda = tref.lambda == ex.lambda && c.twist.lambda == ex.lambda;
    c.reference_a_gamma = c.a_gamma_root_sum == K(ex.a_gamma) && c.a_gamma_formula == K(ex.a_gamma);
    // printed kernel lives in long coordinates: x_long = x_short - b2/12
    KPoly shift(std::vector<QuadraticFieldElement>{-short_shift(Eref), K(Rational(1L))}, one);
    c.reference_kernel = ex.kernel.compose(shift) == c.kernel && short_form(Eref) == c.E;
  }
  return c;
}

nlohmann::ordered_json to_json(const Isogeny22Certificate& c) {
  using nlohmann::ordered_json;
  auto q = [](const QuadraticFieldElement& v) { return quadratic_json(v); };
  auto poly = [&](const KPoly& f) {
    ordered_json a = ordered_json::array();
    for (const auto& v : f.coeffs()) a.push_back(q(v));
    return a;
  };
  ordered_json j;
  j["x"] = c.x.str();
  j["disc"] = std::to_string(c.d);
  j["y"] = q(c.y);
  j["E"] = {{"A", q(c.E.A)}, {"B", q(c.E.B)}};
  j["mu"] = q(c.twist.mu);
  j["lambda"] = q(c.twist.lambda);
  j["delta"] = c.twist.delta;
  j["L"] = {{"base_disc", c.d}, {"adjoin_sqrt", q(c.twist.lambda)}, {"equals_K", c.twist.lambda_is_square},
            {"norm_class", c.twist.norm_class.str()}};
  j["lambda_norm"] = (c.twist.lambda * galois_conj(c.twist.lambda)).str();
  j["a_gamma"] = q(c.a_gamma_root_sum);
  j["a_gamma_formula"] = q(c.a_gamma_formula);
  j["kernel"] = poly(c.kernel);
  j["E_twist"] = {{"A", q(c.E_twist.A)}, {"B", q(c.E_twist.B)}};
  j["velu_codomain"] = {{"A", q(c.velu_codomain.A)}, {"B", q(c.velu_codomain.B)}};
  j["codomain_matches"] = c.codomain_matches;
  j["division_polynomial_primes"] = c.division_primes;
  j["divides_division_polynomial"] = c.divides_division_polynomial;
  if (c.has_reference)
    j["reference"] = {{"mu", c.reference_mu}, {"lambda", c.reference_lambda}, {"a_gamma", c.reference_a_gamma},
                      {"kernel", c.reference_kernel}, {"printed_curve_mu", q(c.reference_curve_mu)}};
  return j;
}

}  // namespace x0quad
