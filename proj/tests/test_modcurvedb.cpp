#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "doctest.h"
#include "x0quad/modcurvedb/drivers.hpp"

using namespace x0quad;

namespace {

const Database& db() {
  static const Database d = load_database();
  return d;
}


// Signed squarefree kernel of a nonzero integer by trial division.
long kernel(Integer n) {
  long sign = n < 0 ? -1 : 1;
  if (n < 0) n = -n;
  long out = 1;
  for (long p = 2; Integer(p) * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  return sign * out * n.get_si();
}

// Kernel of the discriminant of X^2 - tr X + N, cleared of denominators.
long min_poly_field(const QuadraticFieldElement& z) {
  Rational disc = z.trace() * z.trace() - Rational(4) * z.norm();
  return kernel(disc.num() * disc.den());
}

std::vector<const ExceptionalRow*> irrational_rows(long n) {
  std::vector<const ExceptionalRow*> out;
  for (const auto* r : db().rows(n))
    if (!r->x.b().is_zero()) out.push_back(r);
  return out;
}

// Effective degree-2 divisors supported on rational points, minus the fibres
// {P, iota P}: the nonzero classes they give are distinct in genus 2.
long rational_pair_oracle(const HyperellipticModel& m) {
  auto pts = rational_point_search(m, 20);
  long k = static_cast<long>(pts.size());
  long fibres = 0;
  for (long i = 0; i < k; ++i)
    for (long j = i; j < k; ++j) {
      const auto &P = pts[static_cast<std::size_t>(i)], &Q = pts[static_cast<std::size_t>(j)];
      bool fibre = P.at_infinity ? Q.at_infinity && P.sign == -Q.sign
                                 : !Q.at_infinity && P.x == Q.x && P.y + Q.y + m.h(P.x) == Rational();
      if (fibre) ++fibres;
    }
  return k * (k + 1) / 2 - fibres;
}

}  // namespace

TEST_CASE("dataset loads with the expected shape") {
  CHECK(db().curves.size() == 18);
  CHECK(db().exceptional.size() == 90);
  auto r35 = db().rows(35);
  REQUIRE(r35.size() == 1);
  CHECK(r35[0]->name == "P1");
  CHECK(r35[0]->d == 5);
  CHECK(r35[0]->cm == -35);
  for (long n : {46L, 47L, 59L, 71L}) CHECK(db().rows(n).empty());
  CHECK(db().curve(22).delta == 11);
  CHECK_THROWS(db().curve(37));
  CHECK_THROWS_AS(parse_database("{\"curves\": ["), std::runtime_error);
  CHECK_THROWS_AS(parse_database("{\"curves\": []}"), std::runtime_error);
}

TEST_CASE("dataset override through the environment") {
  auto path = std::filesystem::temp_directory_path() / "x0quad_override.json";
  auto j = nlohmann::json::parse(embedded_dataset());
  j["exceptional"] = nlohmann::json::array();
  j["errata"] = nlohmann::json::array();
  std::ofstream(path) << j.dump();
  ::setenv(kDatasetEnv, path.c_str(), 1);
  Database d = load_database();
  ::unsetenv(kDatasetEnv);
  CHECK(d.exceptional.empty());
  CHECK(d.curves.size() == 18);
  CHECK(load_database(path.string()).exceptional.empty());
  CHECK(load_database().exceptional.size() == db().exceptional.size());
  std::filesystem::remove(path);
}

TEST_CASE("every row lies on its model over the stated field") {
  for (const auto& r : db().exceptional) {
    CAPTURE(r.n);
    CAPTURE(r.name);
    HyperellipticModel m = db().curve(r.n).model();
    bool erratum = r.n == 29 && r.name == "P2";
    CHECK(residual(m, r.x, r.y).is_zero() != erratum);
    const auto& gen = r.x.b().is_zero() ? r.y : r.x;
    CHECK(min_poly_field(gen) == r.d);
    CHECK(row_field(r) == r.d);
    // Serialization round trip.
    CHECK(parse_quadratic(nlohmann::json(quadratic_json(r.x)), r.d) == r.x);
    CHECK(parse_quadratic(nlohmann::json(quadratic_json(r.y)), r.d) == r.y);
  }
  REQUIRE(db().errata.size() == 1);
  const auto& e = db().errata[0];
  auto m = db().curve(29).model();
  auto P1 = db().row(29, "P1");
  CHECK(residual(m, P1->x, e.corrected).is_zero());
  // The corrected point is iota(P1): y -> -h(x) - y.
  CHECK(e.corrected == -m.h.eval_in(P1->x) - P1->y);
}

TEST_CASE("dataset validation flags exactly the known discrepancies") {
  Report rep = validate_database(db());
  std::set<std::string> flagged, mismatched;
  for (const auto& c : rep.checks) {
    if (c.status == CheckStatus::Flagged) flagged.insert(c.name);
    if (c.status == CheckStatus::Mismatch) mismatched.insert(c.name);
  }
  CHECK(flagged == std::set<std::string>{"X0(22).genus", "X0(48).group_line"});
  CHECK(mismatched == std::set<std::string>{"X0(29).P2.residual"});
  auto j = to_json(rep);
  CHECK(j["checks"].size() == rep.checks.size());
  CHECK(j["checks"][0].contains("detail"));
}

TEST_CASE("family points") {
  auto f22 = family_point(db().curve(22).model(), Rational(-1));
  CHECK(f22.delta == Rational(-143));
  CHECK(f22.field == -143);
  CHECK_FALSE(f22.square);

  auto m23 = db().curve(23).model();
  auto f23 = family_point(m23, Rational(0));
  CHECK(f23.delta == Rational(-7));
  REQUIRE(f23.y_plus);
  auto P5 = db().row(23, "P5");
  CHECK((*f23.y_plus == P5->y || *f23.y_minus == P5->y));

  auto f40 = family_point(db().curve(40).model(), Rational(1));
  CHECK(f40.delta == Rational(16));
  CHECK(f40.square);
  CHECK_FALSE(f40.y_plus);

  auto j = to_json(f22);
  CHECK(j["disc"] == "-143");
}

TEST_CASE("rational x on levels 28 and 40 always gives real fields") {
  std::mt19937_64 rng(20240528);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 50);
  for (long n : {28L, 40L}) {
    auto m = db().curve(n).model();
    for (int i = 0; i < 1000; ++i) {
      Rational x(Integer(num(rng)), Integer(den(rng)));
      auto f = family_point(m, x);
      CHECK(f.delta > Rational());
      if (f.y_plus) {
        CHECK(f.field > 0);
        CHECK(residual(m, f.y_plus->embed(x), *f.y_plus).is_zero());
        CHECK(residual(m, f.y_minus->embed(x), *f.y_minus).is_zero());
      }
    }
  }
}

TEST_CASE("real field certificate") {
  auto v = real_field_check(db());
  CHECK(v.report.ok());
  REQUIRE(v.polys.size() == 4);
  for (const auto& c : v.polys) {
    CHECK(c.real_roots == 0);
    CHECK(c.positive);
  }
  CHECK(v.polys[0].poly(Rational()) == Rational(28));
  CHECK(v.polys[1].poly(Rational()) == Rational(1));
  CHECK(v.polys[2].poly == qpoly({4, -12, 25, -30, 25, -12, 4}));
  // The imaginary rows of level 28 (d = -3, -7, -23) and 40 (d = -1).
  CHECK(v.imaginary_rows.size() == 19);
  CHECK(v.imaginary_fields == std::vector<long>{-23, -7, -3, -1});
}

TEST_CASE("genus 2 enumeration partitions J(Q)") {
  struct Expect {
    long n, order, exceptional;
  };
  // |J(Q)| from the group lines; exceptional counts from the rational-pair oracle.
  for (auto [n, order, exc] : {Expect{23, 11, 8}, Expect{26, 21, 12}, Expect{28, 36, 17}, Expect{29, 7, 4},
                               Expect{31, 5, 2}, Expect{50, 15, 6}, Expect{22, 25, 16}}) {
    CAPTURE(n);
    auto e = enumerate_exceptional_genus2(db(), n);
    auto m = db().curve(n).model();
    CHECK(e.group_order == order);
    CHECK(e.rational_pairs == rational_pair_oracle(m));
    CHECK(e.exceptional == exc);
    CHECK(e.exceptional + e.rational_pairs == e.group_order - 1);
    CHECK(e.fiber_adjacent == 0);
    CHECK(e.unmatched_rows.empty());

    QJacobian J = jacobian_over_Q(m);
    std::set<std::string> exceptional_keys;
    for (const auto& c : e.classes)
      if (c.kind == ClassKind::Exceptional) exceptional_keys.insert(J.key(c.divisor));
    for (const auto& c : e.classes) {
      if (c.kind != ClassKind::Exceptional) continue;
      REQUIRE(c.x);
      // The emitted point and its conjugate lie on the model and give the same class.
      CHECK(residual(m, *c.x, *c.y).is_zero());
      auto [u, v] = conjugate_pair_mumford(m, *c.x, *c.y);
      auto [uc, vc] = conjugate_pair_mumford(m, c.x->conj(), c.y->conj());
      CHECK(J.key(J.from_mumford(u, v, 0)) == J.key(c.divisor));
      CHECK(J.key(J.from_mumford(uc, vc, 0)) == J.key(c.divisor));
      // iota(P) = (x, -h(x) - y) is the inverse class and also exceptional.
      auto [ui, vi] = conjugate_pair_mumford(m, *c.x, -m.h.eval_in(*c.x) - *c.y);
      auto inv = J.from_mumford(ui, vi, 0);
      CHECK(J.is_zero(J.add(inv, c.divisor)));
      CHECK(exceptional_keys.count(J.key(inv)) == 1);
    }
  }
}

TEST_CASE("enumeration against the tables") {
  auto e23 = enumerate_exceptional_genus2(db(), 23);
  CHECK(e23.report.ok());
  CHECK(e23.fiber_rows == std::vector<std::string>{"P5", "P6", "P9"});
  std::set<std::string> named;
  for (const auto& c : e23.classes)
    for (const auto& r : c.rows) named.insert(r);
  CHECK(named == std::set<std::string>{"P1", "P2", "P3", "P4", "P7", "P8", "P10", "P11"});

  auto e31 = enumerate_exceptional_genus2(db(), 31);
  CHECK(e31.report.ok());
  CHECK(e31.exceptional == 2);

  auto e29 = enumerate_exceptional_genus2(db(), 29);
  CHECK(e29.corrected_rows == std::vector<std::string>{"P2"});
  CHECK(e29.uncovered == 0);

  auto e50 = enumerate_exceptional_genus2(db(), 50);
  CHECK(e50.uncovered == 0);
  CHECK(irrational_rows(50).size() == 6);

  // Classes of quadratic points absent from the tables: over Q(sqrt -2) for
  // level 22 and over Q(i) for level 26.
  for (auto [n, d, missing] : {std::tuple{22L, -2L, 4L}, std::tuple{26L, -1L, 2L}}) {
    auto e = enumerate_exceptional_genus2(db(), n);
    long count = 0;
    for (const auto& c : e.classes)
      if (c.kind == ClassKind::Exceptional && c.rows.empty()) {
        CHECK(c.d == d);
        ++count;
      }
    CHECK(count == missing);
    CHECK(e.uncovered == missing);
    CHECK_FALSE(e.report.ok());
  }
  CHECK_THROWS_AS(enumerate_exceptional_genus2(db(), 30), std::invalid_argument);
}

TEST_CASE("membership certificates") {
  auto c22 = verify_exceptional_membership(db(), *db().row(22, "P1"));
  CHECK(c22.exceptional);
  REQUIRE(c22.orders.size() == 2);
  for (const auto& o : c22.orders) CHECK((o.order == 5 || o.order == 25));

  auto c23 = verify_exceptional_membership(db(), *db().row(23, "P5"));
  CHECK(c23.fiber);
  CHECK_FALSE(c23.exceptional);

  for (const auto* r : db().rows(28)) {
    if (r->d != -23) continue;
    auto c = verify_exceptional_membership(db(), *r);
    CHECK(c.exceptional);
  }

  // Orders agree at every usable prime: reduction is injective on torsion.
  for (const auto& r : db().exceptional) {
    CAPTURE(r.n);
    CAPTURE(r.name);
    auto c = verify_exceptional_membership(db(), r);
    CHECK(c.fiber == r.x.b().is_zero());
    if (c.fiber || !c.on_model) continue;
    CHECK(c.exceptional);
    REQUIRE(c.orders.size() == 2);
    CHECK(c.orders[0].order == c.orders[1].order);
  }

  auto bad = verify_exceptional_membership(db(), *db().row(29, "P2"));
  CHECK_FALSE(bad.on_model);
  CHECK_FALSE(bad.exceptional);
  CHECK(bad.detail.find("corrected y gives order 7") != std::string::npos);
}

TEST_CASE("isogeny diagram structure") {
  const auto& d23 = db().curve(23).diagrams;
  REQUIRE(d23.size() == 4);
  auto r1 = isogeny_diagram_check(db(), 23, d23[0]);
  CHECK(r1.ok());
  auto dangling = isogeny_diagram_check(db(), 23, d23[2]);
  CHECK_FALSE(dangling.ok());
  CHECK(dangling.checks[0].detail == "dangling point name P18");

  auto r26 = isogeny_diagram_check(db(), 26, db().curve(26).diagrams[0]);
  CHECK(r26.ok());

  DiagramSpec bad{"SQ", {"P3", "P4", "P5", "P6"}, 2, 11};
  CHECK_FALSE(isogeny_diagram_check(db(), 26, bad).ok());

  for (const auto& c : db().curves)
    for (const auto& dg : c.diagrams) {
      if (c.n == 23 && dg.points[1] == "P18") continue;
      CAPTURE(c.n);
      CHECK(isogeny_diagram_check(db(), c.n, dg).ok());
    }
}
