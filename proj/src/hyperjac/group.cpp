#include "x0quad/hyperjac/group.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "x0quad/algebra/finite_field.hpp"

namespace x0quad {

std::vector<std::pair<long, int>> factor_small(long n) {
  std::vector<std::pair<long, int>> r;
  for (long l = 2; l * l <= n; ++l) {
    if (n % l) continue;
    int e = 0;
    while (n % l == 0) {
      n /= l;
      ++e;
    }
    r.emplace_back(l, e);
  }
  if (n > 1) r.emplace_back(n, 1);
  return r;
}

AbelianGroupStructure::AbelianGroupStructure(const std::vector<long>& cyclic_orders) {
  std::map<long, std::vector<int>> parts;
  for (long c : cyclic_orders) {
    if (c < 1) throw std::invalid_argument("cyclic orders must be positive");
    for (auto [l, e] : factor_small(c)) parts[l].push_back(e);
  }
  *this = from_primary(parts);
}

AbelianGroupStructure AbelianGroupStructure::from_primary(const std::map<long, std::vector<int>>& parts) {
  std::size_t k = 0;
  std::map<long, std::vector<int>> sorted;
  for (const auto& [l, p] : parts) {
    auto q = p;
    q.erase(std::remove(q.begin(), q.end(), 0), q.end());
    std::sort(q.rbegin(), q.rend());
    k = std::max(k, q.size());
    sorted[l] = q;
  }
  std::vector<long> e(k, 1);
  for (const auto& [l, q] : sorted)
    for (std::size_t i = 0; i < q.size(); ++i)
      for (int j = 0; j < q[i]; ++j) e[i] *= l;
  std::reverse(e.begin(), e.end());
  AbelianGroupStructure r;
  r.e_ = e;
  return r;
}

long AbelianGroupStructure::order() const {
  long n = 1;
  for (long x : e_) n *= x;
  return n;
}

std::vector<int> AbelianGroupStructure::primary(long l) const {
  std::vector<int> r;
  for (long x : e_) {
    int v = 0;
    while (x % l == 0) {
      x /= l;
      ++v;
    }
    if (v) r.push_back(v);
  }
  std::sort(r.rbegin(), r.rend());
  return r;
}

std::map<long, std::vector<int>> AbelianGroupStructure::primary_parts() const {
  std::map<long, std::vector<int>> r;
  if (e_.empty()) return r;
  for (auto [l, e] : factor_small(e_.back())) r[l] = primary(l);
  return r;
}

AbelianGroupStructure AbelianGroupStructure::without(long l) const {
  auto parts = primary_parts();
  parts.erase(l);
  return from_primary(parts);
}

AbelianGroupStructure AbelianGroupStructure::meet(const AbelianGroupStructure& o) const {
  auto a = primary_parts(), b = o.primary_parts();
  std::map<long, std::vector<int>> r;
  for (const auto& [l, pa] : a) {
    auto it = b.find(l);
    if (it == b.end()) continue;
    const auto& pb = it->second;
    std::vector<int> m;
    for (std::size_t i = 0; i < std::min(pa.size(), pb.size()); ++i) m.push_back(std::min(pa[i], pb[i]));
    r[l] = m;
  }
  return from_primary(r);
}

bool AbelianGroupStructure::embeds_in(const AbelianGroupStructure& o) const {
  for (const auto& [l, pa] : primary_parts()) {
    auto pb = o.primary(l);
    if (pa.size() > pb.size()) return false;
    for (std::size_t i = 0; i < pa.size(); ++i)
      if (pa[i] > pb[i]) return false;
  }
  return true;
}

std::string AbelianGroupStructure::str() const {
  if (e_.empty()) return "0";
  std::string s;
  for (long x : e_) s += (s.empty() ? "" : " + ") + ("Z/" + std::to_string(x));
  return s;
}

FpJacobian jacobian_mod_p(const ReducedModel& m) { return FpJacobian(m.monic); }

QJacobian jacobian_over_Q(const HyperellipticModel& m) { return QJacobian(m.monic_form()); }

FpDivisor random_divisor(const FpJacobian& J, std::mt19937_64& rng) {
  const auto& F = J.curve();
  std::uint64_t p = F.proto().modulus();
  int g = J.genus();
  FpDivisor D = J.zero();
  for (int round = 0; round < 2; ++round) {
    while (true) {
      int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(g));
      std::vector<std::uint64_t> coeffs(static_cast<std::size_t>(k) + 1);
      for (int i = 0; i < k; ++i) coeffs[static_cast<std::size_t>(i)] = rng() % p;
      coeffs.back() = 1;
      if (!is_irreducible_mod_p(p, coeffs)) continue;
      auto field = FiniteField::create(p, coeffs);
      // F mod u as an element of F_p[x]/(u) = F_{p^k}.
      Fq t = Fq::generator(field), val = t.zero();
      for (auto it = F.coeffs().rbegin(); it != F.coeffs().rend(); ++it)
        val = val * t + Fq::from_int(field, static_cast<std::int64_t>(it->value()));
      Fq root;
      if (!field_sqrt(val, root)) continue;
      std::vector<PrimeFieldElement> uc, vc;
      for (auto c : coeffs) uc.emplace_back(p, static_cast<std::int64_t>(c));
      const auto& rv = root.value();
      for (std::size_t i = 0; i < rv.size(); ++i) vc.emplace_back(p, static_cast<std::int64_t>(rv[i]));
      FpPoly u(uc, F.proto()), v(vc, F.proto());
      if (rng() % 2) v = -v;
      int a = J.split() ? static_cast<int>(rng() % static_cast<std::uint64_t>(g - k + 1)) : 0;
      D = J.add(D, J.reduce({u, v, a}));
      break;
    }
  }
  return D;
}

long element_order(const FpJacobian& J, const FpDivisor& D, long N) {
  long ord = N;
  for (auto [l, e] : factor_small(N))
    for (int i = 0; i < e; ++i) {
      if (!J.is_zero(J.mul(D, Integer(ord / l)))) break;
      ord /= l;
    }
  return ord;
}

namespace {

long group_order(const ReducedModel& r) {
  Integer N = l_polynomial(r).at_one();
  if (!N.fits_slong_p()) throw std::runtime_error("group order too large");
  return N.get_si();
}

}  // namespace

namespace {

/// The l-Sylow subgroup of J(F_p), grown from random elements killed by N/l^e.
std::vector<int> sylow_partition(const FpJacobian& J, long N, long l, int e, std::mt19937_64& rng) {
  long le = 1;
  for (int i = 0; i < e; ++i) le *= l;
  EnumeratedSubgroup<PrimeFieldElement> H(J);
  for (int tries = 0; static_cast<long>(H.size()) < le; ++tries) {
    if (tries > 100000) throw std::runtime_error("Sylow subgroup generation did not terminate");
    H.adjoin(J.mul(random_divisor(J, rng), Integer(N / le)));
  }
  if (static_cast<long>(H.size()) != le) throw std::logic_error("Sylow subgroup larger than predicted by L(1)");
  return H.structure().primary(l);
}

std::mt19937_64 sampler(std::uint64_t seed, std::uint64_t p) { return std::mt19937_64(seed ^ (p * 0x9e3779b97f4a7c15ULL)); }

}  // namespace

AbelianGroupStructure group_structure(const ReducedModel& m, std::uint64_t seed) {
  FpJacobian J = jacobian_mod_p(m);
  long N = group_order(m);
  if (N > kMaxEnumerable) throw std::runtime_error("group order too large for enumeration");
  auto rng = sampler(seed, m.p);
  std::map<long, std::vector<int>> parts;
  for (auto [l, e] : factor_small(N)) parts[l] = sylow_partition(J, N, l, e, rng);
  return AbelianGroupStructure::from_primary(parts);
}

AbelianGroupStructure sylow_structure(const ReducedModel& m, long l, std::uint64_t seed) {
  FpJacobian J = jacobian_mod_p(m);
  long N = group_order(m);
  auto rng = sampler(seed, m.p);
  std::map<long, std::vector<int>> parts;
  for (auto [q, e] : factor_small(N))
    if (q == l) parts[l] = sylow_partition(J, N, l, e, rng);
  return AbelianGroupStructure::from_primary(parts);
}

EnumeratedSubgroup<PrimeFieldElement> enumerate_group(const FpJacobian& J, long order, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  EnumeratedSubgroup<PrimeFieldElement> H(J);
  for (int tries = 0; static_cast<long>(H.size()) < order; ++tries) {
    if (tries > 100000) throw std::runtime_error("group enumeration did not terminate");
    H.adjoin(random_divisor(J, rng));
  }
  if (static_cast<long>(H.size()) != order) throw std::logic_error("group larger than its L(1)");
  return H;
}

namespace {

/// Y = (2y + h(x))/c for an affine rational point.
Rational monic_Y(const HyperellipticModel& m, const RationalPoint& P) {
  return (P.y * Rational(2) + m.h(P.x)) / m.infinity_scale();
}

}  // namespace

FpDivisor reduce_point(const HyperellipticModel& m, const FpJacobian& J, const ReducedModel& r, const RationalPoint& P) {
  if (P.at_infinity) return P.sign > 0 ? J.zero() : J.infinity_difference();
  std::uint64_t p = r.p;
  Rational Y = monic_Y(m, P);
  if (P.x.den() % static_cast<unsigned long>(p) == 0) {
    // (a : Y b^(g+1) : b) in weighted coordinates meets infinity at (1 : +-1 : 0).
    unsigned long g1 = static_cast<unsigned long>(J.genus() + 1);
    Rational s = Y * Rational(power(P.x.den(), g1)) / Rational(power(P.x.num(), g1));
    auto t = PrimeFieldElement::from_rational(p, s);
    if (t.is_one()) return J.zero();
    if ((-t).is_one()) return J.infinity_difference();
    throw std::logic_error("point does not reduce to a point at infinity");
  }
  return J.point(PrimeFieldElement::from_rational(p, P.x), PrimeFieldElement::from_rational(p, Y));
}

QDivisor point_class(const HyperellipticModel& m, const QJacobian& J, const RationalPoint& P) {
  if (P.at_infinity) return P.sign > 0 ? J.zero() : J.infinity_difference();
  return J.point(P.x, monic_Y(m, P));
}

CuspidalData cuspidal_subgroup(const HyperellipticModel& m, std::uint64_t p, long height) {
  ReducedModel r = reduce_model(m, p);
  FpJacobian J = jacobian_mod_p(r);
  CuspidalData out;
  out.p = p;
  out.cusps = rational_point_search(m, height);
  EnumeratedSubgroup<PrimeFieldElement> H(J);
  for (const auto& P : out.cusps) H.adjoin(reduce_point(m, J, r, P));
  if (H.size() % p == 0) throw BadReduction("p divides the order of the cuspidal subgroup");
  out.structure = H.structure();
  return out;
}

AbelianGroupStructure bound_from_reductions(const std::map<std::uint64_t, AbelianGroupStructure>& reductions) {
  std::set<long> ells;
  for (const auto& [p, S] : reductions)
    for (const auto& [l, part] : S.primary_parts()) ells.insert(l);
  std::map<long, std::vector<int>> parts;
  for (long l : ells) {
    std::optional<std::vector<int>> acc;
    for (const auto& [p, S] : reductions) {
      if (static_cast<long>(p) == l) continue;  // the p-part need not inject
      auto q = S.primary(l);
      if (!acc) {
        acc = q;
        continue;
      }
      std::vector<int> mcur;
      for (std::size_t i = 0; i < std::min(acc->size(), q.size()); ++i) mcur.push_back(std::min((*acc)[i], q[i]));
      acc = mcur;
    }
    if (!acc) throw std::invalid_argument("the l-part is unbounded: add a prime different from l");
    parts[l] = *acc;
  }
  return AbelianGroupStructure::from_primary(parts);
}

TorsionBound torsion_bound(const HyperellipticModel& m, const std::vector<std::uint64_t>& primes, std::uint64_t seed) {
  if (primes.empty()) throw std::invalid_argument("torsion bound needs at least one prime");
  TorsionBound tb;
  for (auto p : primes) {
    ReducedModel r = reduce_model(m, p);
    tb.orders[p] = l_polynomial(r).at_one();
    tb.reductions[p] = group_structure(r, seed);
  }
  tb.bound = bound_from_reductions(tb.reductions);
  return tb;
}

TorsionBound torsion_bound_search(const HyperellipticModel& m, const AbelianGroupStructure& target,
                                  const std::vector<std::uint64_t>& candidates, std::uint64_t seed) {
  TorsionBound tb;
  for (auto p : candidates) {
    if (!has_good_reduction(m, p)) continue;
    // Counting over F_(p^g) dominates; skip fields that are too large.
    if (std::pow(static_cast<double>(p), m.genus()) > static_cast<double>(kMaxCountedField)) continue;
    ReducedModel r = reduce_model(m, p);
    Integer N = l_polynomial(r).at_one();
    if (N > kMaxEnumerable) continue;
    tb.orders[p] = N;
    tb.reductions[p] = group_structure(r, seed);
    try {
      tb.bound = bound_from_reductions(tb.reductions);
    } catch (const std::invalid_argument&) {
      continue;
    }
    if (tb.bound == target) break;
  }
  if (tb.reductions.empty()) throw std::invalid_argument("no usable prime among the candidates");
  return tb;
}

namespace {

std::vector<Integer> prime_factors(const Integer& n) {
  std::vector<Integer> r;
  for (const auto& [p, e] : factor_integer(n)) r.push_back(p);
  return r;
}

/// [W_G - (deg G / 2)(inf+ + inf-)] for G | F of even degree, reduced.
template <class T>
MumfordDivisor<T> weierstrass_class(const Jacobian<T>& J, const Polynomial<T>& G) {
  int half = G.degree() / 2;
  int g = J.genus();
  return J.reduce({G.monic(), G.zero(), (g + 1) / 2 - half});
}

FpPoly reduce_kpoly(const KPoly& G, std::uint64_t p, std::uint64_t r) {
  std::vector<PrimeFieldElement> c;
  for (const auto& a : G.coeffs()) c.push_back(reduce_mod_prime(a, p, r));
  return FpPoly(c, PrimeFieldElement(p, 0));
}

}  // namespace

TwoTorsionBounds rational_two_torsion(const HyperellipticModel& m, const std::vector<std::uint64_t>& primes,
                                      std::uint64_t seed) {
  QPoly F = m.monic_form();
  if (!is_squarefree(F)) throw std::invalid_argument("F is not squarefree");
  int g = m.genus();
  auto fac = factor_over_Q(F);
  std::vector<QPoly> parts;
  for (const auto& [f, e] : fac.factors) parts.push_back(f);
  std::size_t k = parts.size();

  TwoTorsionBounds out;
  // Galois-stable even subsets of roots (unions of Q-factors), modulo complement.
  std::vector<QPoly> stable;
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << k); ++mask) {
    int deg = 0;
    QPoly G = QPoly::constant(Rational(1L));
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) {
        deg += parts[i].degree();
        G = G * parts[i];
      }
    if (deg % 2 == 0) stable.push_back(G);
  }
  long count = static_cast<long>(stable.size() + 2) / 2;

  // Quadratic characters: every Q-factor splits over Q(sqrt e) into a conjugate pair.
  struct Swap {
    long e;
    std::vector<std::pair<KPoly, KPoly>> pairs;
  };
  std::vector<Swap> swaps;
  bool all_even = std::all_of(parts.begin(), parts.end(), [](const QPoly& f) { return f.degree() % 2 == 0; });
  if (all_even && (g + 1) % 2 == 0) {
    QPoly Fz = m.completed();
    Integer disc = discriminant(Fz).num();
    auto ps = prime_factors(disc);
    std::size_t np = ps.size() + 1;
    for (std::size_t mask = 1; mask < (std::size_t{1} << np); ++mask) {
      Integer e = 1;
      for (std::size_t i = 0; i < ps.size(); ++i)
        if (mask >> i & 1) e *= ps[i];
      if (mask >> ps.size() & 1) e = -e;
      if (e == 1 || !e.fits_slong_p()) continue;
      Swap sw{e.get_si(), {}};
      bool ok = true;
      for (const auto& f : parts) {
        auto kf = factor_over_quadratic_field(f, e);
        if (kf.factors.size() != 2) {
          ok = false;
          break;
        }
        sw.pairs.emplace_back(kf.factors[0].first, kf.factors[1].first);
      }
      if (!ok) continue;
      count += 1L << (sw.pairs.size() - 1);
      swaps.push_back(std::move(sw));
      out.swap_fields.push_back(swaps.back().e);
    }
  }
  int rank = 0;
  while ((1L << rank) < count) ++rank;
  if ((1L << rank) != count) throw std::logic_error("Galois-invariant classes do not form a 2-group");
  out.galois_rank = rank;

  // Reduction ranks.
  out.reduction_rank = 2 * g;
  for (auto p : primes) {
    ReducedModel r = reduce_model(m, p);
    out.reduction_rank = std::min(out.reduction_rank, sylow_structure(r, 2, seed).rank(2));
  }

  // Certificate prime: good, every swap field split, denominators invertible.
  for (std::uint64_t p = 3; p < 2000; p += 2) {
    if (!has_good_reduction(m, p)) continue;
    bool ok = true;
    for (const auto& sw : swaps)
      if (sqrt_mod_p(Integer(sw.e), p).empty() || sw.e % static_cast<long>(p) == 0) ok = false;
    if (!ok) continue;
    try {
      ReducedModel r = reduce_model(m, p);
      FpJacobian J = jacobian_mod_p(r);
      EnumeratedSubgroup<PrimeFieldElement> H(J);
      auto admit = [&](const FpDivisor& D) {
        if (!J.is_zero(J.add(D, D))) throw std::logic_error("constructed class is not 2-torsion");
        H.adjoin(D);
      };
      for (const auto& G : stable) admit(weierstrass_class(J, reduce_poly(G, p)));
      for (const auto& sw : swaps) {
        std::uint64_t root = sqrt_mod_p(Integer(sw.e), p).front();
        std::size_t np = sw.pairs.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << np); ++mask) {
          FpPoly G = fp_poly(p, {1});
          for (std::size_t i = 0; i < np; ++i) {
            const KPoly& half = (mask >> i & 1) ? sw.pairs[i].second : sw.pairs[i].first;
            G = G * reduce_kpoly(half, p, root);
          }
          admit(weierstrass_class(J, G));
        }
      }
      int lower = 0;
      while ((1UL << lower) < H.size()) ++lower;
      out.lower = AbelianGroupStructure(std::vector<long>(static_cast<std::size_t>(lower), 2));
      out.certificate_prime = p;
      break;
    } catch (const ArithmeticError&) {
      continue;
    }
  }
  if (!out.certificate_prime) throw std::runtime_error("no certificate prime found");
  int upper = std::min(out.galois_rank, out.reduction_rank);
  out.upper = AbelianGroupStructure(std::vector<long>(static_cast<std::size_t>(upper), 2));
  return out;
}

DescentResult descent48_check(const HyperellipticModel& m, std::uint64_t p, std::uint64_t seed) {
  ReducedModel r = reduce_model(m, p);
  FpJacobian J = jacobian_mod_p(r);
  DescentResult out;
  out.p = p;
  long N = l_polynomial(r).at_one().get_si();
  auto G = enumerate_group(J, N, seed);
  out.reduction = G.structure();

  EnumeratedSubgroup<PrimeFieldElement> C(J);
  for (const auto& P : rational_point_search(m, 20)) C.adjoin(reduce_point(m, J, r, P));
  out.cuspidal = C.structure();

  std::set<std::string> twoJ;
  for (const auto& x : G.elements()) twoJ.insert(J.key(J.add(x, x)));
  EnumeratedSubgroup<PrimeFieldElement> twoC(J), fourC(J);
  long c_in_2j = 0;
  for (const auto& x : C.elements()) {
    FpDivisor x2 = J.add(x, x);
    twoC.adjoin(x2);
    fourC.adjoin(J.add(x2, x2));
    if (twoJ.count(J.key(x))) ++c_in_2j;
  }
  out.quotient_order = static_cast<long>(C.size() / twoC.size());
  out.image_order = static_cast<long>(C.size()) / c_in_2j;
  out.injective = c_in_2j == static_cast<long>(twoC.size());
  // 2C/4C -> J/2J: every element of 2C lies in 2J, so the kernel is all of 2C/4C.
  long twoc_in_2j = 0;
  for (const auto& x : twoC.elements())
    if (twoJ.count(J.key(x))) ++twoc_in_2j;
  out.control_injective = twoc_in_2j == static_cast<long>(fourC.size());

  auto tt = rational_two_torsion(m, good_primes(m, 3, 7), seed);
  out.two_torsion_contained = tt.lower == tt.upper && tt.upper.rank(2) <= out.cuspidal.rank(2);
  out.equals_cuspidal = out.injective && out.two_torsion_contained;
  return out;
}

std::pair<QPoly, QPoly> conjugate_pair_mumford(const HyperellipticModel& m, const QuadraticFieldElement& x,
                                               const QuadraticFieldElement& y) {
  if (x.b().is_zero()) throw std::invalid_argument("x is rational: P + sigma(P) is a fibre");
  QuadraticFieldElement Y = (y * x.embed(Rational(2)) + m.h.eval_in(x)) * x.embed(m.infinity_scale().inverse());
  QuadraticFieldElement slope = (Y - Y.conj()) / (x - x.conj());
  if (!slope.b().is_zero()) throw std::logic_error("interpolation slope is irrational");
  QuadraticFieldElement icpt = Y - slope * x;
  if (!icpt.b().is_zero()) throw std::logic_error("interpolation intercept is irrational");
  QPoly u = QPoly(std::vector<Rational>{x.norm(), -x.trace(), Rational(1L)});
  QPoly v = QPoly(std::vector<Rational>{icpt.a(), slope.a()});
  if (!((v * v - m.monic_form()) % u).is_zero()) throw ArithmeticError("point is not on the model");
  return {u, v};
}

ClassOrder class_order_mod_p(const HyperellipticModel& m, const QuadraticFieldElement& x, const QuadraticFieldElement& y,
                             std::uint64_t p) {
  ClassOrder out;
  ReducedModel r = reduce_model(m, p);
  out.group_order = l_polynomial(r).at_one();
  if (x.b().is_zero()) {
    out.fiber = true;
    return out;
  }
  auto [u, v] = conjugate_pair_mumford(m, x, y);
  FpPoly up = reduce_poly(u, p), vp = reduce_poly(v, p);
  // A pair of Weierstrass points shares u with F over Q already; only new collisions are bad.
  int shared = gcd(u, m.monic_form()).degree();
  if (up.degree() != 2 || !is_squarefree(up) || gcd(up, r.monic).degree() != shared)
    throw BadReduction("the pair collides with a Weierstrass point or its conjugate mod p");
  FpJacobian J = jacobian_mod_p(r);
  FpDivisor D = J.from_mumford(up, vp, (J.genus() + 1) / 2 - 1);
  out.order = element_order(J, D, out.group_order.get_si());
  return out;
}

}  // namespace x0quad
