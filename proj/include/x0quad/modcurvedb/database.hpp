#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "x0quad/algebra/factor.hpp"
#include "x0quad/algebra/polynomial.hpp"
#include "x0quad/algebra/quadratic.hpp"
#include "x0quad/hyperjac/model.hpp"
#include "x0quad/modcurvedb/report.hpp"

namespace x0quad {

/// Si(P, Q, n) or SQ(P1..P4, a, b).
struct DiagramSpec {
  std::string type;
  std::vector<std::string> points;
  long a = 0, b = 0;
};

/// Group-theoretic data quoted in the torsion arguments (all optional).
struct ProofData {
  std::vector<long> cuspidal;
  std::map<std::uint64_t, std::vector<long>> reductions;
  std::vector<long> two_torsion;
  std::vector<long> bound;
  std::vector<std::uint64_t> bound_primes;
};

struct CurveRecord {
  long n = 0;
  QPoly h, f;
  InvolutionSpec involution;
  long delta = 0;
  std::vector<long> expected_group;
  int genus_printed = 0;
  std::string moduli_note;
  std::vector<DiagramSpec> diagrams;
  bool diagrams_pictorial = false;
  std::optional<ProofData> proof;

  HyperellipticModel model() const { return HyperellipticModel::make(n, h, f, involution); }
};

struct ExceptionalRow {
  long n = 0;
  std::string name;
  long d = 0;
  QuadraticFieldElement x, y;
  std::optional<long> cm;
};

/// A printed coordinate that fails its model, with the value that satisfies it.
struct Erratum {
  long n = 0;
  std::string name, coordinate, note;
  QuadraticFieldElement printed, corrected;
};

/// Stored expressions for the level-22 twist example: g4, g6 as polynomials
/// y0(x) + y1(x) y times a scale; E2^(11) = scale * poly(x) * f_alpha.
struct Level22Data {
  Rational g4_scale, g6_scale, e2_scale;
  QPoly g4_y0, g4_y1, g6_y0, g6_y1, e2_poly;
  std::array<std::array<long, 2>, 2> gamma{};
  struct Example {
    Rational x;
    long d = 0;
    QuadraticFieldElement y, a1, a2, a3, a4, a6, mu, lambda;
    long ell = 0;
    Rational a_gamma;
    KPoly kernel;
  } example;
};

struct Database {
  std::vector<CurveRecord> curves;
  std::vector<ExceptionalRow> exceptional;
  std::vector<Erratum> errata;
  Level22Data n22;
  QPoly f28, f40;
  std::map<long, QPoly> class_polynomials;

  const CurveRecord& curve(long n) const;
  bool has_curve(long n) const;
  std::vector<const ExceptionalRow*> rows(long n) const;
  const ExceptionalRow* row(long n, const std::string& name) const;
};

/// Environment variable naming an external dataset file.
inline constexpr const char* kDatasetEnv = "X0QUAD_DATASET";

/// Parse a dataset document (throws std::runtime_error on malformed input).
Database parse_database(const std::string& text);
/// The dataset at `path`, else the file named by $X0QUAD_DATASET, else the embedded copy.
Database load_database(const std::optional<std::string>& path = std::nullopt);
/// The compiled-in dataset text.
std::string embedded_dataset();

/// y^2 + h(x) y - f(x) at a quadratic point.
QuadraticFieldElement residual(const HyperellipticModel& m, const QuadraticFieldElement& x, const QuadraticFieldElement& y);

/// Genus, row residuals, printed-versus-recomputed discrepancies.
Report validate_database(const Database& db);

/// {"a": "p/q", "b": "r/s"} objects against the field Q(sqrt d).
QuadraticFieldElement parse_quadratic(const nlohmann::json& j, long d);
nlohmann::ordered_json quadratic_json(const QuadraticFieldElement& x);

}  // namespace x0quad
