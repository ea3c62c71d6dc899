#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "x0quad/hyperjac/group.hpp"
#include "x0quad/modcurvedb/database.hpp"

namespace x0quad {

/// The two points above a rational x: y = (-h(x) +- sqrt(delta)) / 2.
struct QuadraticPointFamily {
  long n = 0;
  Rational x, delta;
  /// Squarefree kernel of delta (1 when delta is a nonzero square).
  long field = 1;
  bool square = false;
  /// Present when delta is not a square.
  std::optional<QuadraticFieldElement> y_plus, y_minus;
};

QuadraticPointFamily family_point(const HyperellipticModel& m, const Rational& x);
nlohmann::ordered_json to_json(const QuadraticPointFamily& f);

struct SturmCertificate {
  std::string name;
  QPoly poly;
  int real_roots = 0;
  bool positive = false;  // leading coefficient and value at 0 positive
};

struct RealFieldVerdict {
  std::vector<SturmCertificate> polys;
  /// Rows over imaginary fields for n = 28, 40: all must have irrational x
  /// and a nonzero class.
  std::vector<std::string> imaginary_rows;
  std::vector<long> imaginary_fields;
  Report report;
};

RealFieldVerdict real_field_check(const Database& db, std::uint64_t seed = kDefaultSeed);

enum class ClassKind { Exceptional, RationalPair, FiberAdjacent };
const char* kind_name(ClassKind k);

struct ClassifiedClass {
  QDivisor divisor;
  ClassKind kind = ClassKind::RationalPair;
  /// Exceptional classes: one point of the conjugate pair on y^2 + hy = f.
  long d = 0;
  std::optional<QuadraticFieldElement> x, y;
  /// Names of the table rows giving this class (or its image under iota).
  std::vector<std::string> rows;
};

struct Genus2Enumeration {
  long n = 0;
  long group_order = 0;
  std::vector<ClassifiedClass> classes;  // nonzero classes
  long exceptional = 0, rational_pairs = 0, fiber_adjacent = 0;
  std::vector<std::string> fiber_rows, unmatched_rows, corrected_rows;
  long uncovered = 0;
  Report report;
};

/// Every element of J(Q) = C_J from the cusp classes, classified by its
/// effective degree-2 representative and matched against the table.
Genus2Enumeration enumerate_exceptional_genus2(const Database& db, long n, long height = 20);
nlohmann::ordered_json to_json(const Genus2Enumeration& e);

struct MembershipCertificate {
  long n = 0;
  std::string name;
  bool on_model = false, field_ok = false, fiber = false, exceptional = false;
  struct Order {
    std::uint64_t p;
    long order;
    Integer group_order;
  };
  std::vector<Order> orders;
  std::string detail;
};

/// Residual, field, and the order of [P + sigma(P) - inf+ - inf-] at two good primes.
MembershipCertificate verify_exceptional_membership(const Database& db, const ExceptionalRow& row);
nlohmann::ordered_json to_json(const MembershipCertificate& c);

/// Names, degree products and shared coordinates; not the isogenies.
Report isogeny_diagram_check(const Database& db, long n, const DiagramSpec& diagram);

/// Squarefree kernel of the discriminant of the minimal polynomial of x (of y for rational x).
long row_field(const ExceptionalRow& row);

}  // namespace x0quad
