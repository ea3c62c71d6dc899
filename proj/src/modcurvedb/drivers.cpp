#include "x0quad/modcurvedb/drivers.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace x0quad {

namespace {

std::string tag_of(long n) { return "X0(" + std::to_string(n) + ")"; }

const Erratum* erratum_for(const Database& db, long n, const std::string& name) {
  for (const auto& e : db.errata)
    if (e.n == n && e.name == name) return &e;
  return nullptr;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
  return s;
}

}  // namespace

QuadraticPointFamily family_point(const HyperellipticModel& m, const Rational& x) {
  QuadraticPointFamily out;
  out.n = m.n;
  out.x = x;
  out.delta = m.delta_at(x);
  Rational root;
  out.square = rational_sqrt(out.delta, root);
  if (out.square) return out;
  out.field = squarefree_kernel(out.delta).get_si();
  // delta = s^2 * field
  Rational s;
  rational_sqrt(out.delta / Rational(out.field), s);
  Integer d(out.field);
  QuadraticFieldElement hx = QuadraticFieldElement::rational(m.h(x)), half(d, Rational(1L, 2L));
  QuadraticFieldElement w(d, Rational(), s);
  out.y_plus = (w - hx) * half;
  out.y_minus = (-w - hx) * half;
  return out;
}

nlohmann::ordered_json to_json(const QuadraticPointFamily& f) {
  nlohmann::ordered_json j;
  j["n"] = f.n;
  j["x"] = f.x.str();
  j["disc"] = f.delta.str();
  j["square"] = f.square;
  j["field"] = f.field;
  if (f.y_plus) {
    j["y_plus"] = quadratic_json(*f.y_plus);
    j["y_minus"] = quadratic_json(*f.y_minus);
  }
  return j;
}

long row_field(const ExceptionalRow& row) {
  const QuadraticFieldElement& gen = row.x.b().is_zero() ? row.y : row.x;
  if (gen.b().is_zero()) return 1;
  Rational disc = gen.trace() * gen.trace() - Rational(4) * gen.norm();
  return squarefree_kernel(disc).get_si();
}

RealFieldVerdict real_field_check(const Database& db, std::uint64_t) {
  RealFieldVerdict out;
  auto certify = [&](const std::string& name, const QPoly& F) {
    SturmCertificate c{name, F, sturm_real_roots(F), F.lc() > Rational() && F(Rational()) > Rational()};
    out.report.add(name, c.real_roots == 0 && c.positive,
                   std::to_string(c.real_roots) + " real roots, value at 0 = " + F(Rational()).str());
    out.polys.push_back(std::move(c));
  };
  certify("f28", db.f28);
  certify("f40", db.f40);
  for (long n : {28L, 40L}) certify(tag_of(n) + ".F", db.curve(n).model().completed());

  std::set<long> fields;
  for (long n : {28L, 40L}) {
    for (const auto* r : db.rows(n)) {
      if (r->d > 0) continue;
      auto cert = verify_exceptional_membership(db, *r);
      out.imaginary_rows.push_back(tag_of(n) + "." + r->name);
      fields.insert(r->d);
      out.report.add(tag_of(n) + "." + r->name + ".exception", cert.exceptional && !cert.fiber,
                     "Q(sqrt(" + std::to_string(r->d) + ")): " + cert.detail);
    }
  }
  out.imaginary_fields.assign(fields.begin(), fields.end());
  return out;
}

const char* kind_name(ClassKind k) {
  switch (k) {
    case ClassKind::Exceptional: return "EXCEPTIONAL";
    case ClassKind::RationalPair: return "RATIONAL-PAIR";
    case ClassKind::FiberAdjacent: return "FIBER-ADJACENT";
  }
  return "?";
}

Genus2Enumeration enumerate_exceptional_genus2(const Database& db, long n, long height) {
  const CurveRecord& rec = db.curve(n);
  HyperellipticModel m = rec.model();
  if (m.genus() != 2) throw std::invalid_argument(tag_of(n) + " does not have genus 2");
  QJacobian J = jacobian_over_Q(m);
  if (!J.split()) throw std::invalid_argument("split-model arithmetic needs an even-degree model");
  Rational c = m.infinity_scale();

  Genus2Enumeration out;
  out.n = n;
  out.report.n = n;
  EnumeratedSubgroup<Rational> G(J);
  for (const auto& P : rational_point_search(m, height)) G.adjoin(point_class(m, J, P));
  out.group_order = static_cast<long>(G.size());
  long expected = 1;
  for (long e : rec.expected_group) expected *= e;
  out.report.add("group_order", out.group_order == expected,
                 "|J(Q)| = " + std::to_string(out.group_order) + ", printed " + std::to_string(expected));

  std::map<std::string, std::size_t> index;
  for (const auto& D : G.elements()) {
    if (J.is_zero(D)) continue;
    ClassifiedClass cc;
    cc.divisor = D;
    if (D.u.degree() == 2) {
      Rational u1 = D.u.coeff(1), u0 = D.u.coeff(0);
      Rational disc = u1 * u1 - Rational(4) * u0, s;
      if (!rational_sqrt(disc, s)) {
        cc.kind = ClassKind::Exceptional;
        cc.d = squarefree_kernel(disc).get_si();
        rational_sqrt(disc / Rational(cc.d), s);
        Integer d(cc.d);
        QuadraticFieldElement x(d, -u1 / Rational(2), s / Rational(2));
        QuadraticFieldElement Y = x.embed(D.v.coeff(1)) * x + x.embed(D.v.coeff(0));
        cc.x = x;
        cc.y = (Y * x.embed(c) - m.h.eval_in(x)) * x.embed(Rational(1L, 2L));
      }
    }
    // A fibre would make the class zero, so FiberAdjacent cannot occur.
    if (cc.kind == ClassKind::Exceptional)
      ++out.exceptional;
    else
      ++out.rational_pairs;
    index[J.key(D)] = out.classes.size();
    out.classes.push_back(std::move(cc));
  }
  out.report.add("partition", out.exceptional + out.rational_pairs == out.group_order - 1 && out.fiber_adjacent == 0,
                 std::to_string(out.exceptional) + " exceptional + " + std::to_string(out.rational_pairs) +
                     " rational pairs of " + std::to_string(out.group_order - 1) + " nonzero classes");

  for (const auto* r : db.rows(n)) {
    if (r->x.b().is_zero()) {
      out.fiber_rows.push_back(r->name);
      continue;
    }
    QuadraticFieldElement x = r->x, y = r->y;
    if (!residual(m, x, y).is_zero()) {
      const Erratum* e = erratum_for(db, n, r->name);
      if (!e) {
        out.unmatched_rows.push_back(r->name);
        continue;
      }
      (e->coordinate == "x" ? x : y) = e->corrected;
      out.corrected_rows.push_back(r->name);
    }
    auto [u, v] = conjugate_pair_mumford(m, x, y);
    auto it = index.find(J.key(J.from_mumford(u, v, J.a_inf() - 1)));
    if (it == index.end() || out.classes[it->second].kind != ClassKind::Exceptional) {
      out.unmatched_rows.push_back(r->name);
      continue;
    }
    out.classes[it->second].rows.push_back(r->name);
  }

  bool closed = true;
  for (const auto& cc : out.classes) {
    if (cc.kind != ClassKind::Exceptional) continue;
    const auto& inv = out.classes[index.at(J.key(J.neg(cc.divisor)))];
    if (inv.kind != ClassKind::Exceptional) closed = false;
    if (cc.rows.empty() && inv.rows.empty()) ++out.uncovered;
  }
  out.report.add("rows_matched", out.unmatched_rows.empty(),
                 out.unmatched_rows.empty() ? "every irrational-x row is an exceptional class"
                                            : "unmatched: " + join(out.unmatched_rows));
  out.report.add("classes_covered", out.uncovered == 0,
                 std::to_string(out.uncovered) + " exceptional classes without a row up to iota");
  out.report.add("iota_closed", closed, "exceptional set closed under class inversion");
  if (!out.corrected_rows.empty())
    out.report.flag("corrected_rows", "matched with the corrected coordinate: " + join(out.corrected_rows));
  if (!out.fiber_rows.empty())
    out.report.flag("fiber_rows", "rational x, class zero: " + join(out.fiber_rows));
  return out;
}

nlohmann::ordered_json to_json(const Genus2Enumeration& e) {
  nlohmann::ordered_json j;
  j["n"] = e.n;
  j["group_order"] = e.group_order;
  j["exceptional"] = e.exceptional;
  j["rational_pairs"] = e.rational_pairs;
  j["fiber_adjacent"] = e.fiber_adjacent;
  j["classes"] = nlohmann::ordered_json::array();
  for (const auto& c : e.classes) {
    nlohmann::ordered_json cj;
    cj["kind"] = kind_name(c.kind);
    cj["u"] = c.divisor.u.str();
    cj["v"] = c.divisor.v.str();
    cj["a"] = c.divisor.a;
    if (c.x) {
      cj["d"] = c.d;
      cj["x"] = quadratic_json(*c.x);
      cj["y"] = quadratic_json(*c.y);
    }
    cj["rows"] = c.rows;
    j["classes"].push_back(std::move(cj));
  }
  j["fiber_rows"] = e.fiber_rows;
  j["unmatched_rows"] = e.unmatched_rows;
  j["checks"] = to_json(e.report)["checks"];
  return j;
}

MembershipCertificate verify_exceptional_membership(const Database& db, const ExceptionalRow& row) {
  MembershipCertificate out;
  out.n = row.n;
  out.name = row.name;
  HyperellipticModel m = db.curve(row.n).model();
  out.on_model = residual(m, row.x, row.y).is_zero();
  out.field_ok = row_field(row) == row.d && squarefree_part(Integer(row.d)) == row.d;
  if (row.x.b().is_zero()) {
    out.fiber = true;
    out.detail = "rational x: P + sigma(P) is a fibre";
    return out;
  }
  auto certify = [&](const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
    std::vector<MembershipCertificate::Order> orders;
    for (auto p : good_primes(m, 3, 400)) {
      try {
        auto co = class_order_mod_p(m, x, y, p);
        orders.push_back({p, co.order, co.group_order});
      } catch (const ArithmeticError&) {
        continue;  // p divides a coordinate denominator
      } catch (const BadReduction&) {
        continue;
      }
      if (orders.size() == 2) break;
    }
    return orders;
  };
  auto describe = [](const std::vector<MembershipCertificate::Order>& orders) {
    if (orders.size() < 2) return std::string("fewer than two usable primes");
    std::ostringstream os;
    for (const auto& o : orders) os << (os.tellp() > 0 ? ", " : "") << "order " << o.order << " mod " << o.p;
    return os.str();
  };
  if (!out.on_model) {
    out.detail = "not on the model";
    if (const Erratum* e = erratum_for(db, row.n, row.name)) {
      QuadraticFieldElement x = row.x, y = row.y;
      (e->coordinate == "x" ? x : y) = e->corrected;
      if (residual(m, x, y).is_zero()) out.detail += "; corrected " + e->coordinate + " gives " + describe(certify(x, y));
    }
    return out;
  }
  out.orders = certify(row.x, row.y);
  out.exceptional = out.orders.size() == 2 && out.orders[0].order > 1 && out.orders[1].order > 1;
  out.detail = describe(out.orders);
  return out;
}

nlohmann::ordered_json to_json(const MembershipCertificate& c) {
  nlohmann::ordered_json j;
  j["n"] = c.n;
  j["name"] = c.name;
  j["on_model"] = c.on_model;
  j["field_ok"] = c.field_ok;
  j["classification"] = c.fiber ? "FIBER" : c.exceptional ? "EXCEPTIONAL" : "UNCERTIFIED";
  j["detail"] = c.detail;
  j["orders"] = nlohmann::ordered_json::array();
  for (const auto& o : c.orders)
    j["orders"].push_back({{"p", o.p}, {"order", o.order}, {"group_order", o.group_order.get_str()}});
  return j;
}

Report isogeny_diagram_check(const Database& db, long n, const DiagramSpec& dg) {
  Report rep;
  rep.n = n;
  std::string name = dg.type + "(" + join(dg.points) + ")";
  struct Vertex {
    QuadraticFieldElement x;
    long d;
  };
  std::vector<Vertex> verts;
  bool resolved = true;
  for (const auto& p : dg.points) {
    std::string base = p;
    bool conj = false;
    if (auto pos = p.find("^sigma"); pos != std::string::npos) {
      base = p.substr(0, pos);
      conj = true;
    }
    const ExceptionalRow* r = db.has_curve(n) ? db.row(n, base) : nullptr;
    if (!r) {
      rep.add(name + ".resolve", false, "dangling point name " + p);
      resolved = false;
      continue;
    }
    verts.push_back({conj ? r->x.conj() : r->x, r->d});
  }
  if (resolved) rep.add(name + ".resolve", true, "all points resolve");
  if (dg.type == "SQ") {
    rep.add(name + ".shape", dg.points.size() == 4, std::to_string(dg.points.size()) + " vertices");
    rep.add(name + ".degrees", dg.a * dg.b == n,
            std::to_string(dg.a) + "*" + std::to_string(dg.b) + " = " + std::to_string(dg.a * dg.b));
  } else if (dg.type == "Si") {
    rep.add(name + ".shape", dg.points.size() == 2, std::to_string(dg.points.size()) + " vertices");
    rep.add(name + ".degrees", dg.a == n, "degree " + std::to_string(dg.a));
    if (verts.size() == 2) {
      bool shared = verts[0].x == verts[1].x || verts[0].x == verts[1].x.conj();
      rep.add(name + ".shared_x", shared, "x = " + verts[0].x.str() + " and " + verts[1].x.str());
    }
  } else {
    rep.add(name + ".type", false, "unknown diagram type " + dg.type);
  }
  if (!verts.empty()) {
    bool same = std::all_of(verts.begin(), verts.end(), [&](const Vertex& v) { return v.d == verts[0].d; });
    rep.add(name + ".field", same, "common field Q(sqrt(" + std::to_string(verts[0].d) + "))");
  }
  return rep;
}

}  // namespace x0quad
