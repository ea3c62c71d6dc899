#include <cmath>
#include <random>

#include "x0quad/algebra/factor.hpp"
#include "x0quad/algebra/finite_field.hpp"
#include "x0quad/cli/criteria.hpp"
#include "x0quad/ellisog/level22.hpp"
#include "x0quad/modcurvedb/drivers.hpp"
#include "x0quad/qexp/eisenstein.hpp"

namespace x0quad::cli {

namespace {

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

Rational small_rational(Rng& rng, long h) { return Rational(Integer(uniform(rng, -h, h)), Integer(uniform(rng, 1, h))); }

std::string cases_str(long k) { return std::to_string(k) + " cases"; }

template <class T>
bool field_axioms(const T& a, const T& b, const T& c) {
  if (!((a + b) + c == a + (b + c) && (a * b) * c == a * (b * c))) return false;
  if (!(a * (b + c) == a * b + a * c && a + b == b + a && a * b == b * a)) return false;
  if (!a.is_zero() && !(a * a.inverse()).is_one()) return false;
  return (a - a).is_zero();
}

void algebra_properties(Report& r, Rng& rng, int cases) {
  int bad_q = 0, bad_k = 0, bad_p = 0, bad_f = 0;
  auto F2 = FiniteField::standard(1009, 2);
  const long fields[] = {-143, -23, -7, -5, -1, 2, 5, 13};
  for (int i = 0; i < cases; ++i) {
    Rational a = small_rational(rng, 50), b = small_rational(rng, 50), c = small_rational(rng, 50);
    bad_q += !field_axioms(a, b, c);
    Integer d(fields[rng() % 8]);
    QuadraticFieldElement x(d, small_rational(rng, 20), small_rational(rng, 20)),
        y(d, small_rational(rng, 20), small_rational(rng, 20)), z(d, small_rational(rng, 20), small_rational(rng, 20));
    bad_k += !(field_axioms(x, y, z) && x.conj().conj() == x && (x * y).norm() == x.norm() * y.norm() &&
               (x * y).conj() == x.conj() * y.conj());
    std::uint64_t p = (i % 2) ? 1009 : 7;
    auto rp = [&] { return PrimeFieldElement(p, static_cast<std::int64_t>(rng() % p)); };
    bad_p += !field_axioms(rp(), rp(), rp());
    bad_f += !field_axioms(random_element(F2, rng), random_element(F2, rng), random_element(F2, rng));
  }
  r.add("algebra.rational_axioms", bad_q == 0, cases_str(cases));
  r.add("algebra.quadratic_axioms", bad_k == 0, cases_str(cases) + ", with conjugation and norm");
  r.add("algebra.prime_field_axioms", bad_p == 0, cases_str(cases));
  r.add("algebra.extension_field_axioms", bad_f == 0, cases_str(cases) + " in F_(1009^2)");

  int bad_fp = 0, bad_fq = 0, bad_sturm = 0, bad_snf = 0, sturm_cases = 0;
  for (int i = 0; i < cases; ++i) {
    std::uint64_t p = (i % 3 == 0) ? 3 : (i % 3 == 1) ? 101 : 1009;
    std::vector<PrimeFieldElement> c;
    int deg = static_cast<int>(uniform(rng, 1, 9));
    for (int k = 0; k <= deg; ++k) c.emplace_back(p, static_cast<std::int64_t>(rng() % p));
    if (c.back().is_zero()) c.back() = PrimeFieldElement(p, 1);
    FpPoly f(c, PrimeFieldElement(p, 0));
    bad_fp += !(factor_over_Fp(f).expand() == f);

    std::vector<Rational> q;
    int dq = static_cast<int>(uniform(rng, 1, 6));
    for (int k = 0; k <= dq; ++k) q.emplace_back(uniform(rng, -9, 9));
    if (q.back().is_zero()) q.back() = Rational(1L);
    QPoly g(q);
    bad_fq += !(factor_over_Q(g).expand() == g);

    // Sturm additivity on coprime squarefree pairs.
    std::vector<Rational> u, v;
    for (int k = 0; k <= 3; ++k) u.emplace_back(uniform(rng, -6, 6)), v.emplace_back(uniform(rng, -6, 6));
    QPoly U(u), V(v);
    if (U.degree() >= 1 && V.degree() >= 1 && gcd(U, V).degree() == 0 && gcd(U, U.derivative()).degree() == 0 &&
        gcd(V, V.derivative()).degree() == 0) {
      ++sturm_cases;
      bad_sturm += sturm_real_roots(U * V) != sturm_real_roots(U) + sturm_real_roots(V);
    }

    std::array<std::array<long, 2>, 2> M{{{uniform(rng, -30, 30), uniform(rng, -30, 30)},
                                         {uniform(rng, -30, 30), uniform(rng, -30, 30)}}};
    long det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
    if (det == 0) continue;
    if (det < 0) std::swap(M[0], M[1]), det = -det;
    auto [e1, e2] = snf_2x2(M);
    Integer g4 = gcd(gcd(Integer(M[0][0]), Integer(M[0][1])), gcd(Integer(M[1][0]), Integer(M[1][1])));
    bad_snf += !(e2 % e1 == 0 && e1 * e2 == det && e1 == abs(g4));
  }
  r.add("algebra.factor_Fp_roundtrip", bad_fp == 0, cases_str(cases));
  r.add("algebra.factor_Q_roundtrip", bad_fq == 0, cases_str(cases));
  r.add("algebra.sturm_additive", bad_sturm == 0 && sturm_cases > 0, cases_str(sturm_cases) + " coprime squarefree pairs");
  r.add("algebra.snf_2x2", bad_snf == 0, "random matrices with nonzero determinant");
}

void qexp_properties(Report& r, const Database& db) {
  int bad = 0, checked = 0;
  for (const auto& c : db.curves) {
    if (c.involution.kind != InvolutionSpec::Kind::AtkinLehner) continue;
    long d = c.involution.d;
    auto s = a_gamma_series(c.involution, 60);
    ++checked;
    if (!(s.coeff(0) == Rational(Integer(-2 * d * (d - 1)), Integer(24)))) ++bad;
    for (const auto& [e, a] : s.terms())
      if (!(a * Rational(12L)).is_integer()) ++bad;
  }
  r.add("qexp.a_gamma_atkin_lehner", bad == 0,
        std::to_string(checked) + " levels: constant term -2d(d-1)/24, denominators divide 12");
  int prop_bad = 0;
  for (long prec = 2; prec <= 50; prec += 8)
    for (auto w : {NormalizerCase::Beta40, NormalizerCase::Beta48}) prop_bad += !a_gamma_lattice_oracle(w, prec).equal;
  r.add("qexp.a_gamma_matrices_all_precisions", prop_bad == 0, "precisions 2, 10, ..., 50");
}

void hyperjac_properties(Report& r, const Database& db, const Options& o, Rng& rng, int cases) {
  int weil_bad = 0, fe_bad = 0, pairs = 0;
  long triples = 0, cantor_bad = 0;
  int cusp_bad = 0;
  for (const auto& c : db.curves) {
    auto m = c.model();
    int g = m.genus();
    auto ps = usable_primes(m, o);
    for (auto p : ps) {
      auto red = reduce_model(m, p);
      long N = count_points(red, 1);
      long t = N - static_cast<long>(p) - 1;
      weil_bad += static_cast<double>(t) * static_cast<double>(t) > 4.0 * g * g * static_cast<double>(p);
      if (g <= 4 || p <= 7) {
        auto L = l_polynomial(red);
        Integer pk(1);
        for (int i = g; i >= 0; --i) {
          if (L.a[static_cast<std::size_t>(2 * g - i)] != pk * L.a[static_cast<std::size_t>(i)]) ++fe_bad;
          pk *= static_cast<unsigned long>(p);
        }
        ++pairs;
      }
    }
    // Cantor arithmetic at the first usable prime.
    auto J = jacobian_mod_p(reduce_model(m, ps.front()));
    for (int i = 0; i < cases; ++i, ++triples) {
      auto a = random_divisor(J, rng), b = random_divisor(J, rng), d = random_divisor(J, rng);
      if (!J.equal(J.add(J.add(a, b), d), J.add(a, J.add(b, d))) || !J.is_zero(J.add(a, J.neg(a)))) ++cantor_bad;
    }
    // Cuspidal subgroup away from the auxiliary primes.
    std::optional<CuspidalData> ref;
    for (auto p : ps) {
      CuspidalData C;
      try {
        C = cuspidal_subgroup(m, p, o.height);
      } catch (const BadReduction&) {
        continue;
      }
      if (!ref) {
        ref = C;
        continue;
      }
      cusp_bad += !(C.structure.without(static_cast<long>(p)).without(static_cast<long>(ref->p)) ==
                    ref->structure.without(static_cast<long>(p)).without(static_cast<long>(ref->p)));
    }
  }
  r.add("hyperjac.weil_bound", weil_bad == 0, "every model at every usable prime");
  r.add("hyperjac.functional_equation", fe_bad == 0, std::to_string(pairs) + " (model, prime) pairs");
  r.add("hyperjac.cantor_associative", cantor_bad == 0, std::to_string(triples) + " random triples");
  r.add("hyperjac.cuspidal_prime_independent", cusp_bad == 0, "prime-to-p parts agree across usable primes");
}

void ellisog_properties(Report& r, Rng& rng, int cases) {
  int bad_inv = 0, inv_cases = 0, bad_twist = 0, twist_cases = 0;
  for (int i = 0; i < cases; ++i) {
    EllipticCurve<Rational> C{small_rational(rng, 20), small_rational(rng, 20), small_rational(rng, 20),
                              small_rational(rng, 20), small_rational(rng, 20)};
    try {
      auto I = C.invariants();
      ++inv_cases;
      bad_inv += !(I.c4 * I.c4 * I.c4 - I.c6 * I.c6 == Rational(1728L) * I.disc);
    } catch (const ArithmeticError&) {
    }
    Integer d(-143);
    auto k = [&] { return QuadraticFieldElement(d, small_rational(rng, 20), small_rational(rng, 20)); };
    QuadraticFieldElement mu = k(), c4 = k(), c6 = k();
    if (mu.is_zero() || c4.is_zero() || c6.is_zero()) continue;
    auto t = mu_lambda_L(mu * mu * c4 / mu.embed(Rational(240L)), mu * mu * mu * c6 / mu.embed(Rational(504L)), c4, c6, 11);
    ++twist_cases;
    bad_twist += !(t.mu == mu && t.lambda * t.lambda.conj() == mu.embed(Rational(121L)));
  }
  r.add("ellisog.c4_c6_discriminant", bad_inv == 0, cases_str(inv_cases) + " nonsingular curves");
  r.add("ellisog.lambda_norm", bad_twist == 0, cases_str(twist_cases) + ": lambda sigma(lambda) = delta^2");
}

void modcurvedb_properties(Report& r, const Database& db, Rng& rng, int cases) {
  for (long n : {28L, 40L}) {
    auto m = db.curve(n).model();
    int bad = 0;
    for (int i = 0; i < cases; ++i) bad += !(family_point(m, small_rational(rng, 50)).delta > Rational(0L));
    r.add("modcurvedb.family_positive.X0(" + std::to_string(n) + ")", bad == 0, cases_str(cases) + " of height <= 50");
  }
  int bad_field = 0;
  for (const auto& row : db.exceptional) bad_field += row_field(row) != row.d;
  r.add("modcurvedb.row_fields", bad_field == 0, std::to_string(db.exceptional.size()) + " rows");
}

}  // namespace

Report property_suite(const Database& db, std::uint64_t seed, int cases) {
  Report r;
  Rng rng(seed);
  Options o;
  o.seed = seed;
  algebra_properties(r, rng, cases);
  qexp_properties(r, db);
  hyperjac_properties(r, db, o, rng, cases);
  ellisog_properties(r, rng, cases);
  modcurvedb_properties(r, db, rng, cases);
  return r;
}

}  // namespace x0quad::cli
