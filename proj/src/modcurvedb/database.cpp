#include "x0quad/modcurvedb/database.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "x0quad/algebra/factor.hpp"

namespace x0quad {

extern const std::string_view kEmbeddedDataset;

namespace {

using nlohmann::json;

QPoly poly_of(const json& j) { return qpoly_from_strings(j.get<std::vector<std::string>>()); }

std::vector<long> longs(const json& j) { return j.get<std::vector<long>>(); }

InvolutionSpec involution_of(const json& j) {
  std::string kind = j.at("kind");
  if (kind == "atkin_lehner") return InvolutionSpec::atkin_lehner(j.at("d"));
  if (kind != "matrix") throw std::runtime_error("unknown involution kind " + kind);
  InvolutionSpec s;
  s.kind = InvolutionSpec::Kind::Matrix;
  s.name = j.at("name");
  auto m = j.at("matrix");
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) s.matrix[r][c] = m.at(r).at(c);
  return s;
}

KPoly kpoly_of(const json& j, long d) {
  std::vector<QuadraticFieldElement> c;
  for (const auto& e : j) c.push_back(parse_quadratic(e, d));
  return KPoly(c, QuadraticFieldElement(Integer(d), Rational()));
}

CurveRecord curve_of(const json& j) {
  CurveRecord c;
  c.n = j.at("n");
  c.h = poly_of(j.at("h"));
  c.f = poly_of(j.at("f"));
  c.involution = involution_of(j.at("involution"));
  c.delta = j.at("delta");
  c.expected_group = longs(j.at("expected_group"));
  c.genus_printed = j.at("genus_printed");
  c.moduli_note = j.value("moduli_note", "");
  for (const auto& d : j.value("diagrams", json::array())) {
    DiagramSpec s;
    s.type = d.at("type");
    s.points = d.at("points").get<std::vector<std::string>>();
    s.a = d.value("a", 0L);
    s.b = d.value("b", 0L);
    c.diagrams.push_back(std::move(s));
  }
  c.diagrams_pictorial = j.value("diagrams_pictorial", false);
  if (j.contains("proof")) {
    const auto& p = j.at("proof");
    ProofData d;
    if (p.contains("C_J")) d.cuspidal = longs(p.at("C_J"));
    if (p.contains("reductions"))
      for (const auto& [k, v] : p.at("reductions").items()) d.reductions[std::stoull(k)] = longs(v);
    if (p.contains("two_torsion")) d.two_torsion = longs(p.at("two_torsion"));
    if (p.contains("bound")) d.bound = longs(p.at("bound"));
    if (p.contains("bound_primes")) d.bound_primes = p.at("bound_primes").get<std::vector<std::uint64_t>>();
    c.proof = d;
  }
  return c;
}

Level22Data level22_of(const json& j) {
  Level22Data L;
  L.g4_scale = Rational::parse(j.at("g4").at("scale").get<std::string>());
  L.g4_y0 = poly_of(j.at("g4").at("y0"));
  L.g4_y1 = poly_of(j.at("g4").at("y1"));
  L.g6_scale = Rational::parse(j.at("g6").at("scale").get<std::string>());
  L.g6_y0 = poly_of(j.at("g6").at("y0"));
  L.g6_y1 = poly_of(j.at("g6").at("y1"));
  L.e2_scale = Rational::parse(j.at("e2_11").at("scale").get<std::string>());
  L.e2_poly = poly_of(j.at("e2_11").at("poly"));
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) L.gamma[r][c] = j.at("gamma").at(r).at(c);
  const auto& e = j.at("example");
  auto& x = L.example;
  x.x = Rational::parse(e.at("x").get<std::string>());
  x.d = e.at("d");
  x.y = parse_quadratic(e.at("y"), x.d);
  const auto& cv = e.at("curve");
  x.a1 = parse_quadratic(cv.at("a1"), x.d);
  x.a2 = parse_quadratic(cv.at("a2"), x.d);
  x.a3 = parse_quadratic(cv.at("a3"), x.d);
  x.a4 = parse_quadratic(cv.at("a4"), x.d);
  x.a6 = parse_quadratic(cv.at("a6"), x.d);
  x.mu = parse_quadratic(e.at("mu"), x.d);
  x.lambda = parse_quadratic(e.at("lambda"), x.d);
  x.ell = e.at("ell");
  x.a_gamma = Rational::parse(e.at("a_gamma").get<std::string>());
  x.kernel = kpoly_of(e.at("kernel"), x.d);
  return L;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string list_str(const std::vector<long>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

QuadraticFieldElement parse_quadratic(const nlohmann::json& j, long d) {
  return QuadraticFieldElement(Integer(d), Rational::parse(j.at("a").get<std::string>()),
                               Rational::parse(j.at("b").get<std::string>()));
}

nlohmann::ordered_json quadratic_json(const QuadraticFieldElement& x) {
  return {{"a", x.a().str()}, {"b", x.b().str()}, {"d", x.d().get_si()}};
}

const CurveRecord& Database::curve(long n) const {
  for (const auto& c : curves)
    if (c.n == n) return c;
  throw std::invalid_argument("no curve X_0(" + std::to_string(n) + ") in the dataset");
}

bool Database::has_curve(long n) const {
  for (const auto& c : curves)
    if (c.n == n) return true;
  return false;
}

std::vector<const ExceptionalRow*> Database::rows(long n) const {
  std::vector<const ExceptionalRow*> r;
  for (const auto& e : exceptional)
    if (e.n == n) r.push_back(&e);
  return r;
}

const ExceptionalRow* Database::row(long n, const std::string& name) const {
  for (const auto& e : exceptional)
    if (e.n == n && e.name == name) return &e;
  return nullptr;
}

Database parse_database(const std::string& text) {
  Database db;
  try {
    json j = json::parse(text);
    for (const auto& c : j.at("curves")) db.curves.push_back(curve_of(c));
    for (const auto& r : j.at("exceptional")) {
      ExceptionalRow row;
      row.n = r.at("n");
      row.name = r.at("name");
      row.d = r.at("d");
      row.x = parse_quadratic(r.at("x"), row.d);
      row.y = parse_quadratic(r.at("y"), row.d);
      if (!r.at("cm").is_null()) row.cm = r.at("cm").get<long>();
      db.exceptional.push_back(std::move(row));
    }
    for (const auto& e : j.value("errata", json::array())) {
      Erratum er;
      er.n = e.at("n");
      er.name = e.at("name");
      er.coordinate = e.at("coordinate");
      er.note = e.value("note", "");
      long d = 0;
      for (const auto& r : j.at("exceptional"))
        if (r.at("n") == er.n && r.at("name") == er.name) d = r.at("d");
      er.printed = parse_quadratic(e.at("printed"), d);
      er.corrected = parse_quadratic(e.at("corrected"), d);
      db.errata.push_back(std::move(er));
    }
    const auto& sp = j.at("special");
    db.n22 = level22_of(sp.at("n22"));
    db.f28 = poly_of(sp.at("thm21").at("f28"));
    db.f40 = poly_of(sp.at("thm21").at("f40"));
    for (const auto& [k, v] : sp.at("class_polynomials").items()) db.class_polynomials[std::stol(k)] = poly_of(v);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed dataset: ") + e.what());
  }
  return db;
}

std::string embedded_dataset() { return std::string(kEmbeddedDataset); }

Database load_database(const std::optional<std::string>& path) {
  if (path) return parse_database(read_file(*path));
  if (const char* env = std::getenv(kDatasetEnv); env && *env) return parse_database(read_file(env));
  return parse_database(embedded_dataset());
}

QuadraticFieldElement residual(const HyperellipticModel& m, const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
  return y * y + m.h.eval_in(x) * y - m.f.eval_in(x);
}

Report validate_database(const Database& db) {
  Report rep;
  rep.add("curve_count", db.curves.size() == 18, std::to_string(db.curves.size()) + " curve records");
  for (const auto& c : db.curves) {
    std::string tag = "X0(" + std::to_string(c.n) + ")";
    HyperellipticModel m;
    try {
      m = c.model();
    } catch (const std::exception& e) {
      rep.add(tag + ".model", false, e.what());
      continue;
    }
    int g = m.genus();
    if (g == c.genus_printed)
      rep.add(tag + ".genus", true, "genus " + std::to_string(g));
    else
      rep.flag(tag + ".genus", "printed genus " + std::to_string(c.genus_printed) + ", model has genus " + std::to_string(g));
    long delta = c.involution.kind == InvolutionSpec::Kind::AtkinLehner ? c.involution.d : 0;
    if (c.involution.kind == InvolutionSpec::Kind::Matrix) {
      auto [e1, e2] = snf_2x2(c.involution.matrix);
      delta = e1 == 1 && e2.fits_slong_p() ? e2.get_si() : -1;
    }
    rep.add(tag + ".delta", delta == c.delta, "delta " + std::to_string(c.delta));
    if (c.proof && !c.proof->cuspidal.empty() && c.proof->cuspidal != c.expected_group)
      rep.flag(tag + ".group_line", "printed group " + list_str(c.expected_group) + " differs from the structure " +
                                        list_str(c.proof->cuspidal) + " quoted in the torsion argument");
  }
  for (const auto& r : db.exceptional) {
    std::string tag = "X0(" + std::to_string(r.n) + ")." + r.name;
    if (!db.has_curve(r.n)) {
      rep.add(tag, false, "row references a missing curve");
      continue;
    }
    HyperellipticModel m = db.curve(r.n).model();
    auto res = residual(m, r.x, r.y);
    rep.add(tag + ".residual", res.is_zero(), res.is_zero() ? "exact zero" : "residual " + res.str());
    const QuadraticFieldElement& gen = r.x.b().is_zero() ? r.y : r.x;
    bool field_ok = !gen.b().is_zero() && squarefree_part(Integer(r.d)) == r.d;
    rep.add(tag + ".field", field_ok, "Q(sqrt(" + std::to_string(r.d) + "))");
  }
  return rep;
}

}  // namespace x0quad
