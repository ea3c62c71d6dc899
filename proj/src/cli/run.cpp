#include "x0quad/cli/run.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <ostream>
#include <thread>

#include "x0quad/cli/criteria.hpp"
#include "x0quad/ellisog/level22.hpp"
#include "x0quad/modcurvedb/drivers.hpp"
#include "x0quad/qexp/eisenstein.hpp"

namespace x0quad::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Bad input detected after parsing (unknown level, missing flag).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Config {
  std::optional<long> n;
  std::optional<std::uint64_t> p;
  std::optional<std::string> x, dataset;
  std::string which = "beta40";
  int branch = 1;
  unsigned jobs = 0;
  bool pretty = false;
  Options opt;
};

Json group_json(const AbelianGroupStructure& S) { return S.invariants(); }

const char* verdict(bool ok) { return ok ? "ok" : "mismatch"; }

long need_n(const Config& c) {
  if (!c.n) throw UsageError("--n is required");
  return *c.n;
}

const CurveRecord& need_curve(const Database& db, const Config& c) {
  long n = need_n(c);
  if (!db.has_curve(n)) throw UsageError("no model for n = " + std::to_string(n));
  return db.curve(n);
}

Rational need_x(const Config& c) {
  if (!c.x) throw UsageError("--x is required");
  try {
    return Rational::parse(*c.x);
  } catch (const std::exception&) {
    throw UsageError("--x must be a rational number p/q");
  }
}

int exit_for(const Report& r) { return r.ok() ? kExitOk : kExitMismatch; }

/// Model-level checks (one dot in the name) or row-level checks.
Report split_validation(const Database& db, const Config& c, bool rows) {
  Report all = validate_database(db), r;
  if (c.n) {
    need_curve(db, c);
    r.n = *c.n;
  }
  std::string prefix = c.n ? "X0(" + std::to_string(*c.n) + ")." : "";
  for (const auto& ch : all.checks) {
    bool is_row = std::count(ch.name.begin(), ch.name.end(), '.') >= 2;
    if (is_row != rows) continue;
    if (!prefix.empty() && ch.name.rfind(prefix, 0) != 0) continue;
    r.checks.push_back(ch);
  }
  if (rows)
    for (const auto& row : db.exceptional) {
      if (c.n && row.n != *c.n) continue;
      long k = row_field(row);
      r.add("X0(" + std::to_string(row.n) + ")." + row.name + ".min_poly_field", k == row.d,
            "discriminant kernel " + std::to_string(k));
    }
  return r;
}

int cmd_jacobian(const Database& db, const Config& c, Json& out) {
  const auto& rec = need_curve(db, c);
  if (!c.p) throw UsageError("--p is required");
  auto m = rec.model();
  if (!has_good_reduction(m, *c.p)) throw UsageError("bad reduction at p = " + std::to_string(*c.p));
  auto red = reduce_model(m, *c.p);
  auto L = l_polynomial(red);
  auto S = group_structure(red, c.opt.seed);
  out["n"] = rec.n;
  out["p"] = *c.p;
  out["genus"] = red.genus;
  Json a = Json::array();
  for (const auto& ai : L.a) a.push_back(ai.get_str());
  out["l_polynomial"] = a;
  out["order"] = L.at_one().get_str();
  out["structure"] = group_json(S);
  bool ok = true;
  if (rec.proof)
    if (auto it = rec.proof->reductions.find(*c.p); it != rec.proof->reductions.end()) {
      out["printed"] = AbelianGroupStructure(it->second).invariants();
      ok = S == AbelianGroupStructure(it->second);
    }
  out["status"] = verdict(ok);
  return ok ? kExitOk : kExitMismatch;
}

int cmd_cuspidal(const Database& db, const Config& c, Json& out) {
  const auto& rec = need_curve(db, c);
  auto m = rec.model();
  std::vector<std::uint64_t> ps = c.p ? std::vector<std::uint64_t>{*c.p} : usable_primes(m, c.opt);
  for (auto p : ps) {
    if (!has_good_reduction(m, p)) throw UsageError("bad reduction at p = " + std::to_string(p));
    try {
      auto C = cuspidal_subgroup(m, p, c.opt.height);
      AbelianGroupStructure want(rec.expected_group);
      out["n"] = rec.n;
      out["p"] = p;
      out["cusps"] = C.cusps.size();
      out["structure"] = group_json(C.structure);
      out["printed"] = want.invariants();
      bool ok = C.structure == want;
      // The printed level-48 line is a known discrepancy resolved by the proof value.
      bool known = !ok && rec.proof && C.structure == AbelianGroupStructure(rec.proof->cuspidal);
      out["status"] = ok ? "ok" : known ? "flagged" : "mismatch";
      return ok || known ? kExitOk : kExitMismatch;
    } catch (const BadReduction& e) {
      if (c.p) throw UsageError(e.what());
    }
  }
  throw UsageError("no usable prime for the cuspidal subgroup");
}

int cmd_torsion_bound(const Database& db, const Config& c, Json& out) {
  const auto& rec = need_curve(db, c);
  auto m = rec.model();
  auto tb = torsion_bound(m, usable_primes(m, c.opt), c.opt.seed);
  AbelianGroupStructure C(rec.expected_group);
  out["n"] = rec.n;
  Json red = Json::object();
  for (const auto& [p, S] : tb.reductions) red[std::to_string(p)] = group_json(S);
  out["reductions"] = red;
  out["bound"] = group_json(tb.bound);
  out["cuspidal"] = C.invariants();
  bool fits = C.embeds_in(tb.bound);
  out["status"] = tb.bound == C ? "ok" : fits ? "flagged" : "mismatch";
  return fits ? kExitOk : kExitMismatch;
}

int cmd_two_torsion(const Database& db, const Config& c, Json& out) {
  const auto& rec = need_curve(db, c);
  auto t = rational_two_torsion(rec.model(), usable_primes(rec.model(), c.opt), c.opt.seed);
  out["n"] = rec.n;
  out["lower"] = group_json(t.lower);
  out["upper"] = group_json(t.upper);
  out["galois_rank"] = t.galois_rank;
  out["reduction_rank"] = t.reduction_rank;
  out["swap_fields"] = t.swap_fields;
  out["certificate_prime"] = t.certificate_prime;
  bool ok = t.lower.embeds_in(t.upper);
  if (ok && rec.proof && !rec.proof->two_torsion.empty()) ok = t.lower == AbelianGroupStructure(rec.proof->two_torsion);
  out["status"] = !ok ? "mismatch" : t.lower == t.upper ? "ok" : "flagged";
  return ok ? kExitOk : kExitMismatch;
}

int cmd_descent48(const Database& db, const Config& c, Json& out) {
  std::uint64_t p = c.p.value_or(5);
  auto d = descent48_check(db.curve(48).model(), p, c.opt.seed);
  out["n"] = 48;
  out["p"] = d.p;
  out["cuspidal"] = group_json(d.cuspidal);
  out["reduction"] = group_json(d.reduction);
  out["quotient_order"] = d.quotient_order;
  out["image_order"] = d.image_order;
  out["injective"] = d.injective;
  out["control_injective"] = d.control_injective;
  out["two_torsion_contained"] = d.two_torsion_contained;
  out["equals_cuspidal"] = d.equals_cuspidal;
  bool ok = d.injective && d.equals_cuspidal;
  out["status"] = verdict(ok);
  return ok ? kExitOk : kExitMismatch;
}

int cmd_eisenstein(const Config& c, Json& out) {
  NormalizerCase w;
  if (c.which == "beta40")
    w = NormalizerCase::Beta40;
  else if (c.which == "beta48")
    w = NormalizerCase::Beta48;
  else
    throw UsageError("--which must be beta40 or beta48");
  if (c.opt.prec < 1) throw UsageError("--prec must be positive");
  auto r = a_gamma_lattice_oracle(w, c.opt.prec);
  out["which"] = c.which;
  out["prec"] = c.opt.prec;
  out["equal"] = r.equal;
  out["descends"] = r.descends;
  out["direct_matches"] = r.direct_matches;
  out["folded_matches"] = r.folded_matches;
  out["first_mismatch"] = r.first_mismatch ? Json(*r.first_mismatch) : Json(nullptr);
  Json coeffs = Json::object();
  for (const auto& [e, a] : r.target.terms()) coeffs[std::to_string(e)] = a.str();
  out["a_gamma"] = coeffs;
  out["status"] = verdict(r.equal);
  return r.equal ? kExitOk : kExitMismatch;
}

int cmd_family(const Database& db, const Config& c, Json& out) {
  const auto& rec = need_curve(db, c);
  out = to_json(family_point(rec.model(), need_x(c)));
  return kExitOk;
}

int cmd_enumerate(const Database& db, const Config& c, Json& out) {
  const auto& rec = need_curve(db, c);
  if (rec.model().genus() != 2) throw UsageError("enumeration needs a genus-2 level");
  auto e = enumerate_exceptional_genus2(db, rec.n, c.opt.height);
  out = to_json(e);
  return exit_for(e.report);
}

int cmd_isogeny22(const Database& db, const Config& c, Json& out) {
  if (c.branch != 1 && c.branch != -1) throw UsageError("--branch must be 1 or -1");
  auto cert = isogeny22_pipeline(db, need_x(c), c.branch);
  out = to_json(cert);
  bool ok = cert.codomain_matches && cert.divides_division_polynomial;
  if (cert.has_reference) ok = ok && cert.reference_mu && cert.reference_lambda && cert.reference_a_gamma && cert.reference_kernel;
  out["status"] = verdict(ok);
  return ok ? kExitOk : kExitMismatch;
}

int cmd_real_check(const Database& db, const Config& c, Json& out) {
  auto v = real_field_check(db, c.opt.seed);
  Json polys = Json::array();
  for (const auto& s : v.polys)
    polys.push_back({{"name", s.name}, {"poly", s.poly.str()}, {"real_roots", s.real_roots}, {"positive", s.positive}});
  out["polys"] = polys;
  out["imaginary_rows"] = v.imaginary_rows;
  out["imaginary_fields"] = v.imaginary_fields;
  out["checks"] = to_json(v.report)["checks"];
  return exit_for(v.report);
}

int cmd_report_all(const Database& db, const Config& c, Json& out) {
  const auto& all = criteria();
  std::vector<Report> reports(all.size());
  std::atomic<std::size_t> next{0};
  unsigned jobs = c.jobs ? c.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(all.size()));
  auto worker = [&] {
    for (std::size_t i; (i = next++) < all.size();) {
      try {
        reports[i] = criterion_report(all[i].id, db, c.opt);
      } catch (const std::exception& e) {
        reports[i] = Report{};
        reports[i].add("error", false, e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  Json arr = Json::array();
  long ok = 0, flagged = 0, mismatch = 0;
  std::vector<int> failing;
  for (std::size_t i = 0; i < all.size(); ++i) {
    Json j;
    j["criterion"] = all[i].id;
    j["key"] = all[i].key;
    j["title"] = all[i].title;
    Json body = to_json(reports[i]);
    j["n"] = body["n"];
    j["checks"] = body["checks"];
    j["status"] = verdict(reports[i].ok());
    arr.push_back(std::move(j));
    if (!reports[i].ok()) failing.push_back(all[i].id);
    for (const auto& ch : reports[i].checks)
      (ch.status == CheckStatus::Ok ? ok : ch.status == CheckStatus::Flagged ? flagged : mismatch)++;
  }
  out["seed"] = c.opt.seed;
  out["reports"] = arr;
  out["summary"] = {{"ok", ok}, {"flagged", flagged}, {"mismatch", mismatch}, {"failing_criteria", failing}};
  return mismatch == 0 ? kExitOk : kExitMismatch;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratic points on the hyperelliptic modular curves X_0(n): reproducible checks", "x0quad"};
  app.require_subcommand(1, 1);
  Config c;
  std::vector<std::uint64_t> primes;
  app.add_option("--n", c.n, "level");
  app.add_option("--p", c.p, "prime");
  app.add_option("--x", c.x, "rational x-coordinate, e.g. -1 or 3/2")->allow_extra_args(false);
  app.add_option("--which", c.which, "beta40 or beta48")->check(CLI::IsMember({"beta40", "beta48"}));
  app.add_option("--branch", c.branch, "sign of the square root: 1 or -1");
  app.add_option("--primes", primes, "auxiliary primes (default 3..23, filtered for good reduction)")->delimiter(',');
  app.add_option("--prec", c.opt.prec, "q-expansion precision")->capture_default_str();
  app.add_option("--height", c.opt.height, "rational point search height")->capture_default_str();
  app.add_option("--seed", c.opt.seed, "random seed")->capture_default_str();
  app.add_option("--dataset", c.dataset, "dataset JSON (default: $X0QUAD_DATASET, else the embedded copy)");
  app.add_option("--jobs", c.jobs, "report-all workers (default: number of processors)");
  app.add_flag("--pretty", c.pretty, "indented output");

  const std::vector<std::pair<const char*, const char*>> commands{
      {"verify-models", "model genera, involution degrees and printed group lines"},
      {"verify-tables", "row residuals and fields"},
      {"jacobian", "L-polynomial and group structure of J(F_p)"},
      {"cuspidal", "cuspidal subgroup via reduction mod p"},
      {"torsion-bound", "meet of the prime-to-p parts of J(F_p)"},
      {"two-torsion", "bounds for J(Q)[2]"},
      {"descent48", "2-descent argument for n = 48"},
      {"eisenstein", "A_gamma for beta40 / beta48 against the lattice sum"},
      {"family", "the quadratic points above a rational x"},
      {"enumerate", "classify every class of J(Q) for a genus-2 level"},
      {"isogeny22", "twist isogeny certificate on X_0(22)"},
      {"real-check", "no real quadratic points off the fibres for n = 28, 40"},
      {"report-all", "every reproduction criterion"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << app.help() << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!primes.empty()) c.opt.primes = primes;
  std::string cmd = app.get_subcommands().front()->get_name();

  Json j;
  int code = kExitOk;
  Database db;
  try {
    db = load_database(c.dataset);
  } catch (const std::exception& e) {
    err << "error: dataset: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    if (cmd == "verify-models" || cmd == "verify-tables") {
      Report r = split_validation(db, c, cmd == "verify-tables");
      j = to_json(r);
      code = exit_for(r);
    } else if (cmd == "jacobian") {
      code = cmd_jacobian(db, c, j);
    } else if (cmd == "cuspidal") {
      code = cmd_cuspidal(db, c, j);
    } else if (cmd == "torsion-bound") {
      code = cmd_torsion_bound(db, c, j);
    } else if (cmd == "two-torsion") {
      code = cmd_two_torsion(db, c, j);
    } else if (cmd == "descent48") {
      code = cmd_descent48(db, c, j);
    } else if (cmd == "eisenstein") {
      code = cmd_eisenstein(c, j);
    } else if (cmd == "family") {
      code = cmd_family(db, c, j);
    } else if (cmd == "enumerate") {
      code = cmd_enumerate(db, c, j);
    } else if (cmd == "isogeny22") {
      code = cmd_isogeny22(db, c, j);
    } else if (cmd == "real-check") {
      code = cmd_real_check(db, c, j);
    } else {
      code = cmd_report_all(db, c, j);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitMismatch;
  }
  out << (c.pretty ? j.dump(2) : j.dump()) << "\n";
  return code;
}

}  // namespace x0quad::cli
