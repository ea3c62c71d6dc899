#include <random>
#include <set>

#include "doctest.h"
#include "x0quad/algebra/factor.hpp"

using namespace x0quad;

namespace {

std::mt19937_64 seeded(std::uint64_t salt) { return std::mt19937_64(20240611ULL ^ salt); }

Rational random_rational(std::mt19937_64& rng, long h) {
  std::uniform_int_distribution<long> num(-h, h), den(1, h);
  return Rational(Integer(num(rng)), Integer(den(rng)));
}

QF random_qf(std::mt19937_64& rng, long d) { return QF(Integer(d), random_rational(rng, 30), random_rational(rng, 30)); }

QPoly random_qpoly(std::mt19937_64& rng, int deg, long h) {
  std::uniform_int_distribution<long> c(-h, h);
  std::vector<Rational> v;
  for (int i = 0; i < deg; ++i) v.emplace_back(c(rng));
  long top = 0;
  while (top == 0) top = c(rng);
  v.emplace_back(top);
  return QPoly(v, Rational());
}

}  // namespace

TEST_CASE("rational arithmetic is exact and normalized") {
  Rational a = Rational::parse("6/-4");
  CHECK(a.str() == "-3/2");
  CHECK(a.den() == 2);
  CHECK((a + Rational(3, 2)).is_zero());
  CHECK(Rational::parse(" 7 ").str() == "7");
  CHECK_THROWS_AS(Rational(0).inverse(), ArithmeticError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), ArithmeticError);
  CHECK_THROWS_AS(Rational::parse("1/x"), std::invalid_argument);
  CHECK(squarefree_part(Integer(-143 * 4)) == -143);
  CHECK(squarefree_kernel(Rational(Integer(45), Integer(4))) == 5);
}

TEST_CASE("integer factorization and squarefree parts on random products") {
  auto rng = seeded(7);
  // Primes of mixed sizes beyond the trial-division range; rho splits them in about sqrt(p) steps.
  std::vector<Integer> primes;
  for (const char* p : {"2", "3", "7", "9973", "10007", "1000003", "1000033", "9999991"})
    primes.emplace_back(p);
  for (int i = 0; i < 1000; ++i) {
    Integer n = 1, sqfree = 1;
    std::map<Integer, int> expect;
    int k = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < k; ++j) {
      const Integer& p = primes[rng() % primes.size()];
      int e = 1 + static_cast<int>(rng() % 3);
      expect[p] += e;
      for (int t = 0; t < e; ++t) n *= p;
    }
    for (const auto& [p, e] : expect)
      if (e % 2) sqfree *= p;
    if (rng() % 2) {
      n = -n;
      sqfree = -sqfree;
    }
    CHECK(factor_integer(n) == expect);
    CHECK(squarefree_part(n) == sqfree);
  }
  // A large prime is caught by the primality test, or as a square root.
  Integer big("18446744073709551557"), mid(1000003);
  CHECK(factor_integer(big * mid * mid) == std::map<Integer, int>{{mid, 2}, {big, 1}});
  CHECK(factor_integer(big * big * 7) == std::map<Integer, int>{{Integer(7), 1}, {big, 2}});
  Integer m31(2147483647), p30(1000000007);
  CHECK(factor_integer(m31 * m31 * m31 * p30) == std::map<Integer, int>{{p30, 1}, {m31, 3}});
  CHECK(factor_integer(Integer(1)).empty());
  CHECK_THROWS(factor_integer(Integer(0)));
}

TEST_CASE("quadratic field examples") {
  QF one_plus(Integer(-7), Rational(1), Rational(1));
  QF one_minus(Integer(-7), Rational(1), Rational(-1));
  CHECK(one_plus * one_minus == QF::rational(Rational(8)));
  CHECK(one_plus.norm() == Rational(8));

  QF x(Integer(33), Rational(-3, 2), Rational(-1, 2));  // (-w - 3)/2
  CHECK(x.conj() == QF(Integer(33), Rational(-3, 2), Rational(1, 2)));

  CHECK_THROWS_AS(QF(Integer(-7), 1, 1) + QF(Integer(5), 1, 1), ArithmeticError);
  CHECK_THROWS_AS(QF(Integer(12), 1, 1), ArithmeticError);
  CHECK_THROWS_AS(QF(Integer(-7), 0, 0).inverse(), ArithmeticError);

  QF r;
  CHECK(field_sqrt(QF(Integer(-143), Rational(-143), Rational(0)), r));
  CHECK(r * r == QF(Integer(-143), -143, 0));
  CHECK_FALSE(field_sqrt(QF(Integer(-143), Rational(-11), Rational(0)), r));
}

TEST_CASE("quadratic field axioms and norm multiplicativity on random triples") {
  auto rng = seeded(1);
  const long ds[] = {-143, -7, -1, 5, 33};
  for (int i = 0; i < 1000; ++i) {
    long d = ds[i % 5];
    QF a = random_qf(rng, d), b = random_qf(rng, d), c = random_qf(rng, d);
    CHECK(((a + b) + c) == (a + (b + c)));
    CHECK(((a * b) * c) == (a * (b * c)));
    CHECK((a * (b + c)) == (a * b + a * c));
    CHECK(a.conj().conj() == a);
    CHECK((a * b).norm() == a.norm() * b.norm());
    if (!a.is_zero()) {
      CHECK((a * a.inverse()).is_one());
      CHECK(Rational(a.norm()) * (a.inverse() * a).a() == a.norm());
    }
    CHECK((a * b).conj() == a.conj() * b.conj());
  }
}

TEST_CASE("prime field examples and axioms") {
  CHECK(PrimeFieldElement(5, 2).inverse() == PrimeFieldElement(5, 3));
  CHECK_THROWS_AS(PrimeFieldElement(5, 0).inverse(), ArithmeticError);
  CHECK_THROWS_AS(PrimeFieldElement(5, 1) + PrimeFieldElement(7, 1), ArithmeticError);
  CHECK(PrimeFieldElement::from_rational(11, Rational(1, 2)) == PrimeFieldElement(11, 6));
  CHECK_THROWS_AS(PrimeFieldElement::from_rational(11, Rational(1, 22)), ArithmeticError);

  auto rng = seeded(2);
  const std::uint64_t ps[] = {3, 5, 7, 23, 1000003};
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t p = ps[i % 5];
    auto a = random_element(p, rng), b = random_element(p, rng), c = random_element(p, rng);
    CHECK((a * (b + c)) == (a * b + a * c));
    CHECK(((a * b) * c) == (a * (b * c)));
    if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    PrimeFieldElement r;
    if (field_sqrt(a, r)) CHECK(r * r == a);
    else CHECK(a.legendre() == -1);
  }
}

TEST_CASE("finite field extensions") {
  CHECK_THROWS_AS(FiniteField::create(5, {1, 0, 1} /* x^2+1 = (x+2)(x+3) */), ArithmeticError);
  CHECK_NOTHROW(FiniteField::create(7, {1, 0, 1}));
  CHECK_THROWS_AS(FiniteField::create(9, {1, 1}), ArithmeticError);

  auto rng = seeded(3);
  struct Case {
    std::uint64_t p;
    int k;
  };
  const Case cases[] = {{3, 2}, {5, 3}, {7, 2}, {3, 5}, {23, 2}};
  for (const auto& cs : cases) {
    auto F = FiniteField::standard(cs.p, cs.k);
    CHECK(F->k() == cs.k);
    Integer qm1 = F->order() - 1;
    for (int i = 0; i < 200; ++i) {
      auto a = random_element(F, rng), b = random_element(F, rng), c = random_element(F, rng);
      CHECK((a * (b + c)) == (a * b + a * c));
      if (!a.is_zero()) {
        CHECK(a.pow(qm1).is_one());
        CHECK((a * a.inverse()).is_one());
      }
      FiniteFieldElement r;
      if (field_sqrt(a, r)) CHECK(r * r == a);
    }
  }
}

TEST_CASE("reduction of quadratic field elements") {
  QF x(Integer(-7), Rational(1, 2), Rational(1, 2));
  auto r = reduce_mod_prime(x, 11);
  CHECK(r.field()->k() == 1);
  CHECK(r.value()[0] == 7);
  // Oracle: exhaustive search for r with r^2 = -7 mod 11.
  std::vector<std::uint64_t> roots;
  for (std::uint64_t t = 0; t < 11; ++t)
    if ((t * t) % 11 == 4) roots.push_back(t);
  CHECK(roots == sqrt_mod_p(Integer(-7), 11));
  CHECK(reduce_mod_prime(x, 11, roots[1]) == PrimeFieldElement(11, (1 + 9) * 6));

  CHECK(reduce_mod_prime(QF::sqrt_d(Integer(-1)), 13).value()[0] == 5);
  CHECK(reduce_mod_prime(QF::rational(Rational(3, 2)), 7).value()[0] == 5);
  auto inert = reduce_mod_prime(QF::sqrt_d(Integer(-1)), 7);
  CHECK(inert.field()->k() == 2);
  CHECK(inert * inert == inert.from_integer(Integer(-1)));
  CHECK_THROWS_AS(reduce_mod_prime(QF(Integer(-7), Rational(1, 11), 0), 11), ArithmeticError);
}

TEST_CASE("polynomial gcd, xgcd and division") {
  auto rng = seeded(4);
  for (int i = 0; i < 1000; ++i) {
    QPoly a = random_qpoly(rng, 1 + i % 5, 9), b = random_qpoly(rng, 1 + (i / 5) % 4, 9);
    QPoly c = random_qpoly(rng, i % 3, 9);
    QPoly A = a * c, B = b * c;
    QPoly g = gcd(A, B);
    CHECK(g.lc().is_one());
    CHECK(g.divides(A));
    CHECK(g.divides(B));
    CHECK(c.monic().divides(g));
    auto x = xgcd(A, B);
    CHECK(x.s * A + x.t * B == x.g);
    auto [q, r] = QPoly::divmod(A, b);
    CHECK(q * b + r == A);
    CHECK(r.degree() < b.degree());
  }
}

TEST_CASE("Sturm counts") {
  CHECK(sturm_real_roots(qpoly({28, 0, 25, 0, 10, 0, 1})) == 0);
  CHECK(sturm_real_roots(qpoly({1, 0, 8, 0, -2, 0, 8, 0, 1})) == 0);
  CHECK(sturm_real_roots(qpoly({-1, 0, 1})) == 2);
  CHECK(sturm_real_roots(qpoly({1, -2, 1})) == 1);
  CHECK(sturm_real_roots(qpoly({-1, 0, 1}), Rational(0), Rational(5)) == 1);
  CHECK_THROWS_AS(sturm_real_roots(QPoly(Rational())), ArithmeticError);

  auto rng = seeded(5);
  std::uniform_int_distribution<long> root(-20, 20), pos(1, 30), cnt(0, 3);
  for (int i = 0; i < 1000; ++i) {
    // Oracle: product of distinct linear factors and positive-definite quadratics.
    std::set<long> rs;
    QPoly F = qpoly({1}), G = qpoly({1});
    int nf = static_cast<int>(cnt(rng)), ng = static_cast<int>(cnt(rng));
    for (int j = 0; j < nf; ++j) {
      long r = root(rng);
      if (rs.insert(r).second) F = F * qpoly({-r, 1});
    }
    std::set<long> rg;
    for (int j = 0; j < ng; ++j) {
      long r = root(rng);
      if (!rs.count(r) && rg.insert(r).second) G = G * qpoly({-r, 1});
    }
    F = F * qpoly({pos(rng), 0, 1});
    G = G * qpoly({pos(rng), 2, 1});
    if (gcd(F, G).degree() > 0) continue;
    CHECK(sturm_real_roots(F) == static_cast<int>(rs.size()));
    CHECK(sturm_real_roots(F * G) == sturm_real_roots(F) + sturm_real_roots(G));
  }
}

TEST_CASE("factorization over F_p") {
  auto f5 = factor_over_Fp(fp_poly(5, {1, 0, 1}));
  REQUIRE(f5.factors.size() == 2);
  CHECK(f5.factors[0].first == fp_poly(5, {2, 1}));
  CHECK(f5.factors[1].first == fp_poly(5, {3, 1}));
  CHECK(is_irreducible(fp_poly(7, {1, 0, 1})));
  // x^3 - x - 1 over F_5: exhaustive evaluation finds the root x = 2, so the
  // cubic splits as (x - 2)(x^2 + 2x + 3) with an irreducible quadratic part.
  std::vector<int> roots;
  for (int x = 0; x < 5; ++x)
    if (((x * x * x - x - 1) % 5 + 5) % 5 == 0) roots.push_back(x);
  CHECK(roots == std::vector<int>{2});
  auto cubic = factor_over_Fp(fp_poly(5, {-1, -1, 0, 1}));
  REQUIRE(cubic.factors.size() == 2);
  CHECK(cubic.factors[0].first == fp_poly(5, {-2, 1}));
  CHECK(cubic.factors[1].first == fp_poly(5, {3, 2, 1}));
  // x^3 - 2 over F_7: 2 is not a cube (cubes are 0, 1, 6), so no roots and irreducible.
  int cube_roots = 0;
  for (int x = 0; x < 7; ++x) cube_roots += (x * x * x - 2) % 7 == 0;
  CHECK(cube_roots == 0);
  CHECK(is_irreducible(fp_poly(7, {-2, 0, 0, 1})));

  auto rng = seeded(6);
  const std::uint64_t ps[] = {3, 5, 7, 11, 13};
  std::uniform_int_distribution<int> deg(1, 9);
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t p = ps[i % 5];
    int d = deg(rng);
    std::vector<PrimeFieldElement> v;
    for (int j = 0; j <= d; ++j) v.push_back(random_element(p, rng));
    if (v.back().is_zero()) v.back() = PrimeFieldElement(p, 1);
    FpPoly f(v, PrimeFieldElement(p, 0));
    auto fac = factor_over_Fp(f);
    CHECK(fac.expand() == f);
    for (const auto& [g, m] : fac.factors) {
      std::vector<std::uint64_t> raw;
      for (const auto& c : g.coeffs()) raw.push_back(c.value());
      CHECK(is_irreducible_mod_p(p, raw));  // independent Rabin test
      CHECK(g.lc().is_one());
    }
  }
}

TEST_CASE("factorization over Q") {
  auto f = factor_over_Q(qpoly({36, 1, 1}));
  CHECK(f.factors.size() == 1);
  auto g = factor_over_Q(qpoly({-1, 0, 0, 0, 1}));
  REQUIRE(g.factors.size() == 3);
  CHECK(g.expand() == qpoly({-1, 0, 0, 0, 1}));
  std::set<std::string> got;
  for (auto& [h, m] : g.factors) got.insert(h.str());
  CHECK(got == std::set<std::string>{(qpoly({-1, 1})).str(), qpoly({1, 1}).str(), qpoly({1, 0, 1}).str()});

  auto h = factor_over_Q(qpoly({2, 0, 0, 3}) * qpoly({-4, 0, 9}) * qpoly({-4, 0, 9}));
  CHECK(h.expand() == qpoly({2, 0, 0, 3}) * qpoly({-4, 0, 9}) * qpoly({-4, 0, 9}));
  CHECK(h.count() == 5);

  // Oracle: products of known irreducibles (linear, quadratics with negative
  // discriminant, Eisenstein cubics) must factor back into exactly those pieces.
  auto rng = seeded(7);
  std::uniform_int_distribution<long> small(-9, 9), odd(1, 4), pieces(1, 4);
  for (int i = 0; i < 1000; ++i) {
    std::multiset<std::string> expected;
    QPoly F = qpoly({1});
    int k = static_cast<int>(pieces(rng));
    for (int j = 0; j < k; ++j) {
      QPoly piece;
      switch ((i + j) % 3) {
        case 0: {
          long a = small(rng);
          long b = 1 + std::abs(small(rng)) % 3;
          piece = qpoly({a, b});
          break;
        }
        case 1: {
          long b = small(rng), c = 1 + std::abs(small(rng));
          long a = 1 + std::abs(small(rng)) % 2;
          if (b * b - 4 * a * c >= 0) c = b * b + 1;
          piece = qpoly({c, b, a});
          break;
        }
        default: {
          long q = (odd(rng) % 2 == 0) ? 3 : 5;
          piece = qpoly({q * (1 + std::abs(small(rng)) % 3) * (small(rng) >= 0 ? 1 : -1), q * small(rng), q * small(rng), 1});
          if (piece.coeff(0).num() % (q * q) == 0) piece = piece + qpoly({q});
          break;
        }
      }
      F = F * piece;
      expected.insert(piece.monic().str());
    }
    auto fac = factor_over_Q(F);
    CHECK(fac.expand() == F);
    std::multiset<std::string> got_pieces;
    for (auto& [h2, m] : fac.factors)
      for (int t = 0; t < m; ++t) got_pieces.insert(h2.str());
    CHECK(got_pieces == expected);
  }
}

TEST_CASE("factorization over quadratic fields") {
  auto a = factor_over_quadratic_field(qpoly({7, 0, 1}), Integer(-7));
  REQUIRE(a.factors.size() == 2);
  std::set<std::string> got;
  for (auto& [f, m] : a.factors) got.insert(f.str());
  CHECK(got == std::set<std::string>{"x + (-w)", "x + (w)"});
  CHECK(a.expand() == to_kpoly(qpoly({7, 0, 1}), Integer(-7)));

  auto b = factor_over_quadratic_field(qpoly({1, 0, 1}), Integer(5));
  CHECK(b.factors.size() == 1);

  auto c = factor_over_quadratic_field(qpoly({1, 0, 0, 0, 1}), Integer(-1));
  REQUIRE(c.factors.size() == 2);
  for (auto& [f, m] : c.factors) {
    CHECK(f.degree() == 2);
    CHECK(f.coeff(1).is_zero());
    CHECK(f.coeff(0).a().is_zero());
  }
  CHECK(c.expand() == to_kpoly(qpoly({1, 0, 0, 0, 1}), Integer(-1)));

  // Oracle: (x^2 - d) splits over Q(sqrt d) only.
  auto rng = seeded(8);
  const long ds[] = {-1, -3, 2, 5, -143, 33, -23};
  for (int i = 0; i < 200; ++i) {
    long d = ds[i % 7], e = ds[(i / 7) % 7];
    long shift = static_cast<long>(rng() % 11) - 5;
    QPoly f = qpoly({-d, 0, 1}) * qpoly({shift, 1});
    auto fac = factor_over_quadratic_field(f, Integer(e));
    CHECK(fac.expand() == to_kpoly(f, Integer(e)));
    CHECK(static_cast<int>(fac.factors.size()) == (d == e ? 3 : 2));
  }
}

TEST_CASE("Smith normal form of 2x2 matrices") {
  CHECK(snf_2x2({{{-10, 1}, {-120, 10}}}) == std::make_pair(Integer(1), Integer(20)));
  CHECK(snf_2x2({{{-6, 1}, {-48, 6}}}) == std::make_pair(Integer(1), Integer(12)));
  CHECK(snf_2x2({{{2, 0}, {0, 2}}}) == std::make_pair(Integer(2), Integer(2)));
  CHECK_THROWS_AS(snf_2x2({{{0, 1}, {1, 0}}}), ArithmeticError);

  auto rng = seeded(9);
  std::uniform_int_distribution<long> e(-60, 60);
  int tested = 0;
  while (tested < 1000) {
    std::array<std::array<long, 2>, 2> m{{{e(rng), e(rng)}, {e(rng), e(rng)}}};
    long det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det <= 0) continue;
    ++tested;
    auto [e1, e2] = snf_2x2(m);
    CHECK(e1 * e2 == det);
    CHECK(e2 % e1 == 0);
    // Oracle: brute-force order of Z^2 / M Z^2 exponent = largest elementary divisor.
    long g = std::gcd(std::gcd(std::abs(m[0][0]), std::abs(m[0][1])), std::gcd(std::abs(m[1][0]), std::abs(m[1][1])));
    CHECK(e1 == g);
  }
}
