#include <random>

#include "doctest.h"
#include "x0quad/qexp/eisenstein.hpp"

using namespace x0quad;

namespace {

std::mt19937_64 seeded(std::uint64_t salt) { return std::mt19937_64(20240611ULL ^ salt); }

Rational small_rational(std::mt19937_64& rng) {
  long a = static_cast<long>(rng() % 41) - 20;
  long b = static_cast<long>(rng() % 9) + 1;
  return Rational(a, b);
}

// E_2 through the Lambert form -1/24 + sum_n q^n/(1-q^n)^2 = -1/24 + sum_n sum_l l q^(nl).
QSeries e2_lambert(long prec) {
  QSeries e(1, prec);
  e.set(0, Rational(-1, 24));
  for (long n = 1; n < prec; ++n)
    for (long l = 1; n * l < prec; ++l) e.add_to(n * l, Rational(l));
  return e;
}

}  // namespace

TEST_CASE("Eisenstein series constants and coefficients") {
  auto e2 = eisenstein(2, 20);
  CHECK(e2.coeff(0) == Rational(-1, 24));
  CHECK(e2.coeff(4) == Rational(7));
  CHECK(eisenstein(4, 5).coeff(0) == Rational(1, 240));
  CHECK(eisenstein(6, 5).coeff(0) == Rational(-1, 504));
  CHECK_THROWS(eisenstein(8, 5));
  CHECK(e2 == e2_lambert(20));

  CHECK(eisenstein_e2d(11, 5).coeff(0) == Rational(5, 12));
  CHECK(eisenstein_e2d(5, 10).coeff(5) == Rational(1));
  CHECK_THROWS(eisenstein_e2d(0, 5));

  // sigma_k against brute-force divisor sums
  for (long m = 1; m <= 200; ++m)
    for (long k : {1, 3, 5}) {
      Integer s = 0;
      for (long d = 1; d <= m; ++d)
        if (m % d == 0) s += power(Integer(d), static_cast<unsigned long>(k));
      REQUIRE(divisor_sigma(k, m) == s);
    }
}

TEST_CASE("series products reproduce weight 8 and 10 Eisenstein series") {
  const long prec = 40;
  // With E4 = 1/240 + ..., (240 E4)^2 = 1 + 480 sum sigma_7 q^n and
  // (240 E4)(-504 E6) = 1 - 264 sum sigma_9 q^n.
  QSeries a = eisenstein(4, prec) * Rational(240);
  QSeries b = eisenstein(6, prec) * Rational(-504);
  QSeries e8(1, prec), e10(1, prec);
  e8.set(0, Rational(1));
  e10.set(0, Rational(1));
  for (long n = 1; n < prec; ++n) {
    e8.set(n, Rational(divisor_sigma(7, n) * 480));
    e10.set(n, Rational(divisor_sigma(9, n) * -264));
  }
  CHECK((a * a) == e8);
  CHECK((a * b) == e10);
  CHECK((a * a).precision() == prec);
}

TEST_CASE("truncated series invariants") {
  auto rng = seeded(1);
  auto random_series = [&](long n) {
    long prec = 5 + static_cast<long>(rng() % 20);
    QSeries s(n, prec);
    long start = static_cast<long>(rng() % 4);
    for (long m = start; m < prec; ++m)
      if (rng() % 3) s.set(m, small_rational(rng));
    return s;
  };
  for (int it = 0; it < 1000; ++it) {
    QSeries a = random_series(2), b = random_series(2), c = random_series(2);
    QSeries ab = a * b;
    REQUIRE(ab.precision() == std::min(a.precision() + b.valuation(), b.precision() + a.valuation()));
    REQUIRE(ab == b * a);
    REQUIRE((ab * c) == (a * (b * c)));
    REQUIRE((a * (b + c)) == (a * b + a * c));
    for (const auto& [m, v] : (a - a).terms()) REQUIRE_FALSE(v.is_zero());
    REQUIRE((a - a).is_zero());
    for (const auto& [m, v] : ab.terms()) REQUIRE_FALSE(v.is_zero());
  }
  QSeries s(1, 3);
  s.set(1, Rational(0));
  CHECK(s.terms().empty());
  s.set(7, Rational(1));
  CHECK(s.terms().empty());
  CHECK_THROWS(s.coeff(3));
  CHECK_THROWS(QSeries(1, 3) + QSeries(2, 3));
}

TEST_CASE("cyclotomic rings") {
  for (long m = 1; m <= 60; ++m) {
    QPoly phi = cyclotomic_polynomial(m);
    REQUIRE(phi.lc().is_one());
    REQUIRE(phi.degree() == euler_phi(m));
  }
  CHECK(cyclotomic_polynomial(12) == qpoly({1, 0, -1, 0, 1}));
  CHECK(cyclotomic_polynomial(20) == qpoly({1, 0, -1, 0, 1, 0, -1, 0, 1}));
  for (long m : {5L, 12L, 20L}) {
    auto ring = CyclotomicRing::create(m);
    Cyclo z = Cyclo::zeta_power(ring, 1), p = z.one();
    for (long j = 1; j < m; ++j) {
      p *= z;
      REQUIRE_FALSE(p.is_one());
    }
    CHECK((p * z).is_one());
  }

  auto rng = seeded(2);
  auto ring = CyclotomicRing::create(20);
  auto random_elem = [&] {
    std::vector<Rational> v(8);
    for (auto& c : v) c = small_rational(rng);
    return Cyclo(ring, v);
  };
  for (int it = 0; it < 1000; ++it) {
    Cyclo a = random_elem(), b = random_elem(), c = random_elem();
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a * b == b * a);
    if (!a.is_zero()) REQUIRE((a * a.inverse()).is_one());
  }
}

TEST_CASE("A_gamma series") {
  CHECK(a_gamma_series(InvolutionSpec::atkin_lehner(11), 5).coeff(0) == Rational(-55, 6));
  CHECK(a_gamma_series(InvolutionSpec::beta40(), 5).coeff(0) == Rational(-20, 3));
  CHECK(a_gamma_series(InvolutionSpec::beta48(), 5).coeff(0) == Rational(-2));

  // Expanded form -40 E2(q) - 200 E2(q^5) + 1200 E2(q^10) - 800 E2(q^20).
  const long prec = 60;
  QSeries e2 = eisenstein(2, prec);
  QSeries expanded = e2 * Rational(-40) + e2.substitute_power(5, prec) * Rational(-200) +
                     e2.substitute_power(10, prec) * Rational(1200) + e2.substitute_power(20, prec) * Rational(-800);
  CHECK(a_gamma_series(InvolutionSpec::beta40(), prec) == expanded);

  for (long d = 1; d <= 71; ++d) {
    QSeries a = a_gamma_series(InvolutionSpec::atkin_lehner(d), 60);
    REQUIRE(a.coeff(0) == Rational(-2 * d * (d - 1), 24));
    for (const auto& [m, c] : a.terms()) REQUIRE((Integer(12) % c.den()) == 0);
  }
}

TEST_CASE("S_m identities") {
  CHECK(s_m_at_one(5) == Rational(-2));
  CHECK(s_m_rational(1).first.is_zero());
  CHECK(s_m_taylor(2, 10).coeff(2) == Rational(2));
  CHECK_THROWS(s_m_rational(0));
  for (long m = 1; m <= 25; ++m) {
    auto [num, den] = s_m_rational(m);
    REQUIRE(s_m_at_one(m) == Rational(1 - m * m, 12));
    REQUIRE(rational_function_series(num, den, 60) == s_m_taylor(m, 60));
    // S_m(1/x) = S_m(x): cross-multiply after clearing x^K.
    int K = std::max(num.degree(), den.degree());
    auto reversed = [K](const QPoly& p) {
      std::vector<Rational> c(static_cast<std::size_t>(K) + 1);
      for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(K - i)] = p.coeff(i);
      return QPoly(c);
    };
    REQUIRE(reversed(num) * den == reversed(den) * num);
    // Definition as a sum over nontrivial m-th roots of unity.
    CycloSeries cyc = s_m_cyclotomic(m, 30);
    QSeries descended(1, 30);
    for (const auto& [t, c] : cyc.terms()) {
      REQUIRE(c.is_rational());
      descended.set(t, c.rational_part());
    }
    REQUIRE(descended == s_m_taylor(m, 30));
  }
}

TEST_CASE("exceptional A_gamma oracle") {
  for (auto which : {NormalizerCase::Beta40, NormalizerCase::Beta48}) {
    auto r = a_gamma_lattice_oracle(which, 50);
    CHECK(r.equal);
    CHECK(r.descends);
    CHECK(r.direct_matches);
    CHECK(r.folded_matches);
    CHECK_FALSE(r.first_mismatch.has_value());
    for (long prec = 2; prec <= 50; ++prec) REQUIRE(a_gamma_lattice_oracle(which, prec).equal);
  }
  auto bad = a_gamma_lattice_oracle(NormalizerCase::Beta40, 50, true);
  CHECK_FALSE(bad.equal);
  REQUIRE(bad.first_mismatch.has_value());
  CHECK(*bad.first_mismatch == 50);
  CHECK(bad.folded_matches);
}
