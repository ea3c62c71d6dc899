#include "x0quad/cli/criteria.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <stdexcept>

#include "x0quad/ellisog/level22.hpp"
#include "x0quad/ellisog/sampling.hpp"
#include "x0quad/modcurvedb/drivers.hpp"
#include "x0quad/qexp/eisenstein.hpp"

namespace x0quad::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string tag(long n) { return "X0(" + std::to_string(n) + ")"; }

AbelianGroupStructure grp(const std::vector<long>& v) { return AbelianGroupStructure(v); }

/// Largest subgroup order of B whose l-rank is at most r.
long truncated_order(const AbelianGroupStructure& B, long l, int r) {
  auto parts = B.primary_parts();
  auto& q = parts[l];
  if (static_cast<int>(q.size()) > r) q.resize(static_cast<std::size_t>(r));
  return AbelianGroupStructure::from_primary(parts).order();
}

/// Cusp subgroup at the first usable prime that does not divide its order.
std::optional<CuspidalData> first_cuspidal(const HyperellipticModel& m, const Options& o) {
  for (auto p : usable_primes(m, o)) {
    try {
      return cuspidal_subgroup(m, p, o.height);
    } catch (const BadReduction&) {
    }
  }
  return std::nullopt;
}

Report model_fidelity(const Database& db) {
  Report r = validate_database(db);
  std::set<std::string> flagged, known{tag(22) + ".genus", tag(48) + ".group_line"};
  long mismatches = 0;
  for (const auto& c : r.checks) {
    if (c.status == CheckStatus::Flagged) flagged.insert(c.name);
    if (c.status == CheckStatus::Mismatch) ++mismatches;
  }
  r.add("models.count", db.curves.size() == 18, std::to_string(db.curves.size()) + " models");
  r.add("rows.count", !db.exceptional.empty(), std::to_string(db.exceptional.size()) + " exceptional rows");
  std::string fl;
  for (const auto& f : flagged) fl += (fl.empty() ? "" : ", ") + f;
  r.add("flags.exactly_known", flagged == known, "flagged: " + fl);
  r.add("rows.zero_residual", mismatches == 0, std::to_string(mismatches) + " mismatching checks");
  return r;
}

Report a_gamma_matrices(const Options& o) {
  Report r;
  auto t0 = Clock::now();
  for (auto [which, name] : {std::pair{NormalizerCase::Beta40, "beta40"}, std::pair{NormalizerCase::Beta48, "beta48"}}) {
    auto res = a_gamma_lattice_oracle(which, o.prec);
    std::string d = "through q^" + std::to_string(o.prec);
    if (res.first_mismatch) d += "; first mismatch at q^(" + std::to_string(*res.first_mismatch) + "/2)";
    r.add(std::string(name) + ".equal", res.equal && res.direct_matches && res.folded_matches, d);
    r.add(std::string(name) + ".descends", res.descends, "lattice sum has rational coefficients");
  }
  r.add("runtime", seconds_since(t0) < 30.0, "within 30 s");
  return r;
}

Report s_m_identities() {
  Report r;
  for (long m = 1; m <= 25; ++m) {
    auto [num, den] = s_m_rational(m);
    std::string k = "S" + std::to_string(m);
    r.add(k + ".at_one", s_m_at_one(m) == Rational(1 - m * m, 12), "S_m(1) = " + s_m_at_one(m).str());
    r.add(k + ".taylor", rational_function_series(num, den, 60) == s_m_taylor(m, 60), "60 terms");
    int K = std::max(num.degree(), den.degree());
    auto reversed = [K](const QPoly& p) {
      std::vector<Rational> c(static_cast<std::size_t>(K) + 1);
      for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(K - i)] = p.coeff(i);
      return QPoly(c);
    };
    r.add(k + ".reciprocal", reversed(num) * den == reversed(den) * num, "S_m(x) = S_m(1/x)");
    CycloSeries cyc = s_m_cyclotomic(m, 30);
    QSeries descended(1, 30);
    bool rational = true;
    for (const auto& [t, c] : cyc.terms()) {
      rational = rational && c.is_rational();
      descended.set(t, c.rational_part());
    }
    r.add(k + ".roots_of_unity", rational && descended == s_m_taylor(m, 30), "sum over zeta^k, 30 terms");
  }
  return r;
}

Report reduction_structures(const Database& db, const Options& o) {
  Report r;
  for (const auto& c : db.curves) {
    if (!c.proof) continue;
    auto m = c.model();
    for (const auto& [p, printed] : c.proof->reductions) {
      auto S = group_structure(reduce_model(m, p), o.seed);
      r.add(tag(c.n) + ".p" + std::to_string(p), S == grp(printed),
            "computed " + S.str() + ", printed " + grp(printed).str());
    }
  }
  return r;
}

Report cuspidal_subgroups(const Database& db, const Options& o) {
  Report r;
  for (const auto& c : db.curves) {
    auto m = c.model();
    auto C = first_cuspidal(m, o);
    if (!C) {
      r.add(tag(c.n) + ".cuspidal", false, "no usable prime");
      continue;
    }
    std::string at = " at p = " + std::to_string(C->p);
    if (c.n == 48 && c.proof) {
      bool printed = C->structure == grp(c.expected_group), proof = C->structure == grp(c.proof->cuspidal);
      if (printed == proof)
        r.add(tag(48) + ".cuspidal", printed, "computed " + C->structure.str() + at);
      else
        r.flag(tag(48) + ".cuspidal", "computed " + C->structure.str() + at + " agrees with the " +
                                          (proof ? "proof value " : "group line ") +
                                          grp(proof ? c.proof->cuspidal : c.expected_group).str() + ", not the " +
                                          (proof ? "group line " : "proof value ") +
                                          grp(proof ? c.expected_group : c.proof->cuspidal).str());
      continue;
    }
    r.add(tag(c.n) + ".cuspidal", C->structure == grp(c.expected_group),
          "computed " + C->structure.str() + at + ", printed " + grp(c.expected_group).str());
    if (c.proof && !c.proof->cuspidal.empty())
      r.add(tag(c.n) + ".cuspidal.proof", C->structure == grp(c.proof->cuspidal),
            "computed " + C->structure.str() + ", proof " + grp(c.proof->cuspidal).str());
  }
  return r;
}

Report torsion_pipeline(const Database& db, const Options& o) {
  Report r;
  const std::set<long> special{30, 33, 39, 46, 48};
  for (const auto& c : db.curves) {
    auto m = c.model();
    AbelianGroupStructure C = grp(c.expected_group);
    std::string k = tag(c.n) + ".torsion";
    if (!special.count(c.n)) {
      auto tb = torsion_bound_search(m, C, usable_primes(m, o), o.seed);
      std::string ps;
      for (const auto& [p, S] : tb.reductions) ps += (ps.empty() ? "" : ",") + std::to_string(p);
      r.add(k, tb.bound == C, "bound " + tb.bound.str() + " from p in {" + ps + "}");
      if (!(tb.bound == C)) {
        // Torsion injects into J(F_p) for every odd good p, p-part included.
        AbelianGroupStructure full = tb.reductions.begin()->second;
        for (const auto& [p, S] : tb.reductions) full = full.meet(S);
        r.add(k + ".full_reduction", full == C, "meet of the whole groups J(F_p): " + full.str());
      }
    } else if (c.n == 33 || c.n == 39) {
      std::vector<std::uint64_t> ps;
      for (const auto& [p, S] : c.proof->reductions) ps.push_back(p);
      auto tb = torsion_bound(m, ps, o.seed);
      r.add(k, tb.bound == C, "meet of prime-to-p parts " + tb.bound.str() + ", cuspidal " + C.str());
    } else if (c.n == 30 || c.n == 46) {
      auto t = rational_two_torsion(m, usable_primes(m, o), o.seed);
      auto want = grp(c.proof->two_torsion);
      r.add(k + ".two_torsion", t.lower == t.upper && t.lower == want,
            "lower " + t.lower.str() + ", upper " + t.upper.str());
      std::vector<std::uint64_t> ps = c.proof->bound_primes;
      if (ps.empty())
        for (const auto& [p, S] : c.proof->reductions) ps.push_back(p);
      auto tb = torsion_bound(m, ps, o.seed);
      r.add(k + ".bound", tb.bound == grp(c.proof->bound), "bound " + tb.bound.str());
      // J(Q) sits in the bound with the 2-rank of J(Q)[2] and contains C.
      long cap = truncated_order(tb.bound, 2, t.upper.rank(2));
      r.add(k, C.embeds_in(tb.bound) && cap == C.order(),
            "largest subgroup of 2-rank " + std::to_string(t.upper.rank(2)) + " has order " + std::to_string(cap) +
                " = #C = " + std::to_string(C.order()));
    } else {
      auto d = descent48_check(m, 5, o.seed);
      r.add(k + ".injective", d.injective && !d.control_injective,
            "C/2C -> J(F_5)/2J(F_5) image " + std::to_string(d.image_order) + " of " + std::to_string(d.quotient_order));
      r.add(k, d.two_torsion_contained && d.equals_cuspidal, "J(Q) = C = " + d.cuspidal.str());
    }
  }
  return r;
}

Report real_fields(const Database& db, const Options& o) {
  auto v = real_field_check(db, o.seed);
  Report r = v.report;
  for (const auto& s : v.polys)
    r.add(s.name + ".no_real_roots", s.real_roots == 0 && s.positive, std::to_string(s.real_roots) + " real roots");
  return r;
}

Report level22_pipeline(const Database& db) {
  Report r;
  auto t0 = Clock::now();
  auto c = isogeny22_pipeline(db, Rational(-1L));
  r.add("field", c.d == -143, "K = Q(sqrt " + std::to_string(c.d) + ")");
  r.add("mu", c.has_reference && c.reference_mu, "mu = " + c.twist.mu.str());
  r.add("lambda", c.reference_lambda, "lambda = " + c.twist.lambda.str());
  r.add("L", !c.twist.lambda_is_square, "L = K(sqrt lambda) is quadratic over K");
  r.add("a_gamma", c.reference_a_gamma && c.a_gamma_formula == c.a_gamma_root_sum, "A_gamma = " + c.a_gamma_root_sum.str());
  r.add("kernel", c.reference_kernel && c.divides_division_polynomial, "degree " + std::to_string(c.kernel.degree()));
  auto v = velu(c.E, c.kernel, false);
  const auto& lam = c.twist.lambda;
  r.add("velu", c.codomain_matches && v.codomain.c4() == lam * lam * c.E.c4().conj() &&
                    v.codomain.c6() == lam * lam * lam * c.E.c6().conj(),
        "codomain (lambda^2 sigma(c4), lambda^3 sigma(c6))");
  r.add("runtime", seconds_since(t0) < 5.0, "within 5 s");
  return r;
}

Report isogeny_engine(const Database& db, const Options& o) {
  Report r;
  constexpr std::uint64_t p = 1009;
  std::mt19937_64 rng(o.seed);
  for (long ell : {3L, 5L, 7L, 11L, 13L}) {
    int good = 0;
    const int count = 20;
    for (int i = 0; i < count; ++i) {
      KernelInstance in = random_kernel_instance(p, ell, rng);
      auto v = velu(in.E, in.psi);
      FpPoly rec = kernel_from_curves(in.E, v.codomain, ell);
      if (rec == in.psi && velu(in.E, rec).codomain == v.codomain) ++good;
    }
    r.add("Fp.l" + std::to_string(ell), good == count,
          std::to_string(good) + "/" + std::to_string(count) + " instances over F_" + std::to_string(p));
  }
  auto c = isogeny22_pipeline(db, Rational(-1L));
  auto v = velu(c.E, c.kernel, false);
  auto rec = kernel_from_curves(c.E, v.codomain, 11);
  r.add("K.l11", rec == c.kernel && velu(c.E, rec, false).codomain == v.codomain, "over Q(sqrt -143)");
  return r;
}

Report genus2_completeness(const Database& db, const Options& o) {
  Report r;
  const std::map<long, long> stated{{23, 8}, {31, 2}, {50, 4}};
  for (long n : {23L, 26L, 29L, 31L, 50L}) {
    auto e = enumerate_exceptional_genus2(db, n, o.height);
    for (auto c : e.report.checks) {
      c.name = tag(n) + "." + c.name;
      r.checks.push_back(c);
    }
    long irrational = 0;
    for (const auto* row : db.rows(n)) irrational += row->x.is_rational() ? 0 : 1;
    r.add(tag(n) + ".matches_table", e.uncovered == 0 && e.unmatched_rows.empty(),
          std::to_string(e.exceptional) + " exceptional classes, " + std::to_string(e.uncovered) +
              " without a row, " + std::to_string(irrational) + " irrational-x rows");
    if (auto it = stated.find(n); it != stated.end())
      r.add(tag(n) + ".count", e.exceptional == it->second,
            std::to_string(e.exceptional) + " exceptional classes, expected " + std::to_string(it->second));
  }
  return r;
}

Report certificates(const Database& db) {
  Report r;
  for (const auto& row : db.exceptional) {
    auto c = verify_exceptional_membership(db, row);
    std::string k = tag(row.n) + "." + row.name;
    if (row.x.is_rational())
      r.add(k, c.fiber, c.fiber ? "FIBER" : c.detail);
    else
      r.add(k, c.on_model && c.exceptional && c.orders.size() >= 2, c.detail);
  }
  return r;
}

}  // namespace

std::vector<std::uint64_t> usable_primes(const HyperellipticModel& m, const Options& o) {
  std::vector<std::uint64_t> out;
  for (auto p : o.primes)
    if (p > 2 && has_good_reduction(m, p)) out.push_back(p);
  return out;
}

const std::vector<CriterionInfo>& criteria() {
  static const std::vector<CriterionInfo> all{
      {1, "model-fidelity", "models, genera and row residuals"},
      {2, "a-gamma-matrices", "A_gamma for beta40 and beta48 through q^prec"},
      {3, "s-m-identities", "S_m series, value at 1 and reciprocity for m <= 25"},
      {4, "reduction-structures", "printed J(F_p) structures"},
      {5, "cuspidal-subgroups", "cuspidal subgroups against the printed groups"},
      {6, "torsion-pipeline", "J(Q) = C for every level"},
      {7, "real-fields", "no real quadratic points off the fibres for n = 28, 40"},
      {8, "level22-isogeny", "twist isogeny at x = -1 on X_0(22)"},
      {9, "isogeny-engine", "velu and kernel_from_curves round trips"},
      {10, "genus2-completeness", "exceptional classes of the genus-2 Jacobians"},
      {11, "certificates", "class orders of the table rows"},
      {12, "properties", "randomized invariants"},
  };
  return all;
}

Report criterion_report(int id, const Database& db, const Options& o) {
  switch (id) {
    case 1: return model_fidelity(db);
    case 2: return a_gamma_matrices(o);
    case 3: return s_m_identities();
    case 4: return reduction_structures(db, o);
    case 5: return cuspidal_subgroups(db, o);
    case 6: return torsion_pipeline(db, o);
    case 7: return real_fields(db, o);
    case 8: return level22_pipeline(db);
    case 9: return isogeny_engine(db, o);
    case 10: return genus2_completeness(db, o);
    case 11: return certificates(db);
    case 12: return property_suite(db, o.seed);
  }
  throw std::out_of_range("unknown criterion " + std::to_string(id));
}

}  // namespace x0quad::cli
