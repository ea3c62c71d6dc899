#include <random>

#include "doctest.h"
#include "x0quad/algebra/factor.hpp"
#include "x0quad/ellisog/level22.hpp"
#include "x0quad/ellisog/sampling.hpp"

using namespace x0quad;

namespace {

const Database& db() {
  static const Database d = load_database();
  return d;
}

using QCurve = ShortCurve<Rational>;

constexpr std::uint64_t kP = 1009;

PrimeFieldElement fp(std::int64_t v) { return PrimeFieldElement(kP, v); }

Rational model22_disc(const Rational& x) { return db().curve(22).model().delta_at(x); }

Rational small_rational(std::mt19937_64& rng, long h = 20) {
  long a = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * h + 1)) - h;
  long b = static_cast<long>(rng() % static_cast<std::uint64_t>(h)) + 1;
  return Rational(a, b);
}

QuadraticFieldElement kelt(long d, std::mt19937_64& rng) {
  return QuadraticFieldElement(Integer(d), small_rational(rng), small_rational(rng));
}

// Oracle: kernels from explicit multiples of a torsion point, not from velu.
KernelInstance random_instance(long ell, std::mt19937_64& rng) { return random_kernel_instance(kP, ell, rng); }

}  // namespace

TEST_CASE("Weierstrass invariants") {
  // short form values
  EllipticCurve<Rational> S{0, 0, 0, Rational(3), Rational(5)};
  auto I = S.invariants();
  CHECK(I.c4 == Rational(-48 * 3));
  CHECK(I.c6 == Rational(-864 * 5));
  CHECK(EllipticCurve<Rational>{0, 0, 0, 0, 1}.invariants().j == Rational(0));
  CHECK_THROWS(EllipticCurve<Rational>{0, 0, 0, 0, 0}.invariants());

  const auto& ex = db().n22.example;
  EllipticCurve<QuadraticFieldElement> E{ex.a1, ex.a2, ex.a3, ex.a4, ex.a6};
  CHECK(E.invariants().b2 == ex.a1.embed(Rational(-1)));

  std::mt19937_64 rng(0xe11ULL);
  for (int i = 0; i < 1000; ++i) {
    EllipticCurve<Rational> C{small_rational(rng), small_rational(rng), small_rational(rng), small_rational(rng),
                              small_rational(rng)};
    Invariants<Rational> J;
    try {
      J = C.invariants();
    } catch (const ArithmeticError&) {
      continue;
    }
    REQUIRE(J.c4 * J.c4 * J.c4 - J.c6 * J.c6 == Rational(1728) * J.disc);
    // short form keeps j and the differential normalization (c4, c6 unchanged)
    QCurve s = short_form(C);
    REQUIRE(s.j() == J.j);
    REQUIRE(s.c4() == J.c4);
    REQUIRE(s.c6() == J.c6);
  }
}

TEST_CASE("twists and conjugates") {
  QCurve E{Rational(-7), Rational(10)};
  CHECK(conjugate_and_twist(E, Rational(1)) == E);
  std::mt19937_64 rng(0x7715ULL);
  for (int i = 0; i < 1000; ++i) {
    KCurve K{kelt(-143, rng), kelt(-143, rng)};
    if (K.singular()) continue;
    QuadraticFieldElement lam = kelt(-143, rng);
    if (lam.is_zero()) continue;
    auto T = conjugate_and_twist(K, lam);
    REQUIRE(T.c4() == lam * lam * K.c4().conj());
    REQUIRE(T.c6() == lam * lam * lam * K.c6().conj());
    // twisting again by sigma(lambda) gives sigma^2 E = E scaled by u = sigma(lambda)
    auto TT = conjugate_and_twist(T, lam.conj());
    QuadraticFieldElement u2 = lam.conj() * lam.conj();
    REQUIRE(TT.A == u2 * u2 * K.A);
    REQUIRE(TT.B == u2 * u2 * u2 * K.B);
    REQUIRE(TT.j() == K.j());
  }
  CHECK_THROWS(conjugate_and_twist(E, Rational(0)));
}

TEST_CASE("division polynomials") {
  std::mt19937_64 rng(0xd1fULL);
  for (int i = 0; i < 20; ++i) {
    FpCurve E{fp(static_cast<std::int64_t>(rng() % kP)), fp(static_cast<std::int64_t>(rng() % kP))};
    if (E.singular()) continue;
    for (long ell : {3L, 5L, 7L, 11L, 13L}) {
      auto g = division_polynomial(E, ell);
      REQUIRE(g.degree() == (ell * ell - 1) / 2);
      REQUIRE(g.lc() == fp(ell));
    }
  }
  // y^2 = x^3 + 1: the 3-division polynomial 3x^4 + 12x has the root 0.
  QCurve E{Rational(0), Rational(1)};
  CHECK(division_polynomial(E, 3) == qpoly({0, 12, 0, 0, 3}));
}

TEST_CASE("Velu and kernel recovery: small examples") {
  QCurve E{Rational(0), Rational(1)};
  QPoly x = QPoly::x(Rational(0));
  auto v = velu(E, x);
  CHECK(v.codomain == QCurve{Rational(0), Rational(-27)});
  CHECK(velu(E, QPoly::constant(Rational(1))).codomain == E);
  CHECK(kernel_from_curves(E, QCurve{Rational(0), Rational(-27)}, 3) == x);
  CHECK(kernel_from_curves(E, E, 1) == QPoly::constant(Rational(1)));
  CHECK_THROWS(velu(E, x + QPoly::constant(Rational(1))));
  CHECK_THROWS(kernel_from_curves(E, QCurve{Rational(0), Rational(-26)}, 3));
  CHECK_THROWS(kernel_from_curves(E, E, 4));
  // the isogeny is normalized: (x^3 + Ax + B) X'^2 = X^3 + A'X + B' as rational functions
  // with X = N/D: (x^3 + Ax + B)(N'D - ND')^2 = D (N^3 + A' N D^2 + B' D^3)
  QPoly N = v.map.num, D = v.map.psi * v.map.psi;
  QPoly dX = N.derivative() * D - N * D.derivative();
  QPoly rhs = N * N * N + N * D * D * v.codomain.A + D * D * D * v.codomain.B;
  CHECK(E.rhs_poly() * dX * dX == D * rhs);
}

TEST_CASE("velu after kernel_from_curves is the identity over F_p") {
  std::mt19937_64 rng(0xf1e1dULL);
  auto F2 = FiniteField::standard(kP, 2);
  int instances = 0;
  for (long ell : {3L, 5L, 7L, 11L, 13L}) {
    for (int i = 0; i < 20; ++i, ++instances) {
      KernelInstance in = random_instance(ell, rng);
      REQUIRE(is_kernel_polynomial(in.E, in.psi));
      auto v = velu(in.E, in.psi);
      REQUIRE_FALSE(v.codomain.singular());
      FpPoly rec = kernel_from_curves(in.E, v.codomain, ell);
      REQUIRE(rec == in.psi);
      REQUIRE(velu(in.E, rec).codomain == v.codomain);
      if (i == 0) {
        // images of random points over F_{p^2} land on the codomain
        auto E2 = lift(F2, in.E), C2 = lift(F2, v.codomain);
        IsogenyMap<Fq> phi{lift(F2, v.map.num), lift(F2, v.map.psi)};
        for (int k = 0; k < 200; ++k) {
          auto P = random_point(F2, E2, rng);
          REQUIRE(on_curve(C2, phi(P)));
          // homomorphism on a sample: phi(P + Q) = phi(P) + phi(Q)
          auto Q = random_point(F2, E2, rng);
          auto lhs = phi(point_add(E2, P, Q)), rhs = point_add(C2, phi(P), phi(Q));
          REQUIRE(lhs.infinity == rhs.infinity);
          if (!lhs.infinity) REQUIRE((lhs.x == rhs.x && lhs.y == rhs.y));
        }
        // kernel points go to infinity
        for (const auto& [f, e] : factor_over_Fp(in.psi).factors) {
          if (f.degree() != 1) continue;
          CurvePoint<Fq> K;
          if (lift_point(F2, in.E, -f.coeff(0), K)) REQUIRE(phi(K).infinity);
        }
      }
    }
  }
  CHECK(instances == 100);
}

TEST_CASE("mu, lambda and the field L") {
  const long delta = 11;
  std::mt19937_64 rng(0x3a3bULL);
  for (int i = 0; i < 1000; ++i) {
    QuadraticFieldElement mu = kelt(-143, rng), c4 = kelt(-143, rng), c6 = kelt(-143, rng);
    if (mu.is_zero() || c4.is_zero() || c6.is_zero()) continue;
    auto g4 = mu * mu * c4 / mu.embed(Rational(240));
    auto g6 = mu * mu * mu * c6 / mu.embed(Rational(504));
    auto t = mu_lambda_L(g4, g6, c4, c6, delta);
    REQUIRE(t.mu == mu);
    REQUIRE(t.lambda * t.lambda.conj() == mu.embed(Rational(delta * delta)));
    REQUIRE(t.lambda == -mu.embed(Rational(delta)) * mu.conj() / mu);
    // lambda and -delta Norm(mu) have the same square class over K
    REQUIRE(is_square(t.lambda / mu.embed(t.norm_class)));
  }
  // rational mu gives lambda = -delta
  QuadraticFieldElement one(Integer(-143), Rational(1L));
  auto c4 = one.embed(Rational(3)), c6 = one.embed(Rational(7)), mu = one.embed(Rational(5, 3));
  auto t = mu_lambda_L(mu * mu * c4 / one.embed(Rational(240)), mu * mu * mu * c6 / one.embed(Rational(504)), c4, c6, delta);
  CHECK(t.lambda == one.embed(Rational(-delta)));
  CHECK_FALSE(t.lambda_is_square);
  CHECK_THROWS(mu_lambda_L(c4, c4, c4, c6, delta));
  // -11 becomes a square in Q(sqrt -11)
  CHECK(is_square(QuadraticFieldElement(Integer(-11), Rational(-11))));
  CHECK_FALSE(is_square(QuadraticFieldElement(Integer(-143), Rational(-11))));
}

TEST_CASE("A_gamma at points of X_0(22)") {
  const auto& L = db().n22;
  QuadraticFieldElement one(Integer(-143), Rational(1L));
  auto at = [&](long x, const QuadraticFieldElement& mu, const QuadraticFieldElement& c) {
    return evaluate_a_gamma_at_point(L, one.embed(Rational(x)), mu, c);
  };
  CHECK(at(-1, one, one) == one.embed(Rational(-77, 6)));
  CHECK(at(-2, one, one) == one.embed(Rational(-88)));
  std::mt19937_64 rng(0xa9ULL);
  for (int i = 0; i < 1000; ++i) {
    auto c = kelt(-143, rng), mu = kelt(-143, rng);
    if (c.is_zero() || mu.is_zero()) continue;
    long x = static_cast<long>(rng() % 21) - 10;
    // weight 2 under omega -> c omega; 1/mu scaling under mu -> c mu
    REQUIRE(at(x, mu, c) == at(x, mu, one) / (c * c));
    REQUIRE(at(x, c * mu, one) == at(x, mu, one) / c);
  }
}

TEST_CASE("CM class polynomials") {
  CHECK(cm_check(db(), QuadraticFieldElement(Integer(-3), Rational(0)), -3));
  CHECK(cm_check(db(), QuadraticFieldElement(Integer(-1), Rational(1728)), -4));
  CHECK_FALSE(cm_check(db(), QuadraticFieldElement(Integer(-1), Rational(0)), -4));
  CHECK_THROWS(cm_check(db(), QuadraticFieldElement(Integer(-1), Rational(0)), -5));
  // class numbers of the stored discriminants
  for (const auto& [D, H] : db().class_polynomials) {
    int h = (D == -15 || D == -35 || D == -60) ? 2 : 1;
    CHECK(H.degree() == h);
    CHECK(H.lc() == Rational(1));
    if (h == 2) CHECK(discriminant(H) != Rational(0));
  }
  // j-invariants of classical CM curves
  auto j_of = [](std::vector<long> a) {
    return EllipticCurve<Rational>{Rational(a[0]), Rational(a[1]), Rational(a[2]), Rational(a[3]), Rational(a[4])}.invariants().j;
  };
  auto q = [](const Rational& r) { return QuadraticFieldElement(Integer(-7), r); };
  CHECK(cm_check(db(), q(j_of({1, -1, 0, -2, -1})), -7));   // 49a1
  CHECK(cm_check(db(), q(j_of({0, 4, 0, 2, 0})), -8));      // y^2 = x^3 + 4x^2 + 2x
  CHECK(cm_check(db(), q(j_of({0, -1, 1, -7, 10})), -11));  // 121b1
  CHECK(cm_check(db(), q(j_of({0, 0, 0, -15, 22})), -12));  // y^2 = x^3 - 15x + 22
}

TEST_CASE("isogeny22 pipeline at x = -1") {
  auto c = isogeny22_pipeline(db(), Rational(-1L));
  QuadraticFieldElement one(Integer(-143), Rational(1L));
  CHECK(c.d == -143);
  CHECK(c.twist.mu == one);
  CHECK(c.twist.lambda == one.embed(Rational(-11)));
  CHECK_FALSE(c.twist.lambda_is_square);
  CHECK(c.a_gamma_root_sum == one.embed(Rational(-77, 6)));
  CHECK(c.a_gamma_formula == c.a_gamma_root_sum);
  CHECK(c.codomain_matches);
  CHECK(c.divides_division_polynomial);
  CHECK(c.has_reference);
  CHECK(c.reference_mu);
  CHECK(c.reference_lambda);
  CHECK(c.reference_a_gamma);
  CHECK(c.reference_kernel);
  auto v = velu(c.E, c.kernel, false);
  CHECK(v.codomain.c4() == c.twist.lambda * c.twist.lambda * c.E.c4().conj());
  CHECK(v.codomain.c6() == c.twist.lambda * c.twist.lambda * c.twist.lambda * c.E.c6().conj());
  CHECK(kernel_from_curves(c.E, v.codomain, 11) == c.kernel);

  // the other branch is the Galois conjugate
  auto s = isogeny22_pipeline(db(), Rational(-1L), -1);
  CHECK(s.twist.lambda == c.twist.lambda);
  CHECK(s.kernel == conj(c.kernel));
  CHECK_FALSE(s.has_reference);
}

TEST_CASE("isogeny22 pipeline across the family") {
  int checked = 0;
  for (const Rational& x : {Rational(0), Rational(1), Rational(3), Rational(1, 2), Rational(-3, 2)}) {
    Rational s;
    if (rational_sqrt(model22_disc(x), s)) continue;
    auto c = isogeny22_pipeline(db(), x);
    CHECK(c.twist.lambda * c.twist.lambda.conj() == c.twist.lambda.embed(Rational(121)));
    CHECK(c.codomain_matches);
    CHECK(c.a_gamma_root_sum == c.a_gamma_formula);
    CHECK(c.divides_division_polynomial);
    ++checked;
  }
  CHECK(checked >= 3);
  CHECK_THROWS(isogeny22_pipeline(db(), Rational(2)));  // h(2)^2 + 4 f(2) = 0 or a square fibre
}
