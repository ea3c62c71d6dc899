#include "x0quad/algebra/factor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace x0quad {

QPoly qpoly(std::initializer_list<long> coeffs) {
  std::vector<Rational> v;
  for (long c : coeffs) v.emplace_back(c);
  return QPoly(std::move(v), Rational());
}

QPoly qpoly_from_strings(const std::vector<std::string>& coeffs) {
  std::vector<Rational> v;
  for (const auto& s : coeffs) v.push_back(Rational::parse(s));
  return QPoly(std::move(v), Rational());
}

FpPoly reduce_poly(const QPoly& f, std::uint64_t p) {
  PrimeFieldElement z(p, 0);
  std::vector<PrimeFieldElement> v;
  for (const auto& c : f.coeffs()) v.push_back(PrimeFieldElement::from_rational(p, c));
  return FpPoly(std::move(v), z);
}

FpPoly fp_poly(std::uint64_t p, std::initializer_list<long> coeffs) {
  std::vector<PrimeFieldElement> v;
  for (long c : coeffs) v.emplace_back(p, c);
  return FpPoly(std::move(v), PrimeFieldElement(p, 0));
}

namespace {

bool fp_less(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    auto x = a.coeff(i).value(), y = b.coeff(i).value();
    if (x != y) return x < y;
  }
  return false;
}

FpPoly pth_root(const FpPoly& f, std::uint64_t p) {
  std::vector<PrimeFieldElement> v;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) v.push_back(f.coeff(i));
  return FpPoly(std::move(v), f.proto());
}

}  // namespace

std::vector<std::pair<FpPoly, int>> squarefree_decomposition(const FpPoly& f0) {
  std::vector<std::pair<FpPoly, int>> out;
  if (f0.degree() <= 0) return out;
  FpPoly f = f0.monic();
  std::uint64_t p = f.proto().modulus();
  FpPoly c = gcd(f, f.derivative());
  FpPoly w = FpPoly::div_exact(f, c);
  int i = 1;
  while (w.degree() > 0) {
    FpPoly y = gcd(w, c);
    FpPoly z = FpPoly::div_exact(w, y);
    if (z.degree() > 0) out.emplace_back(z, i);
    ++i;
    w = y;
    c = FpPoly::div_exact(c, y);
  }
  if (c.degree() > 0) {
    for (auto& [g, m] : squarefree_decomposition(pth_root(c, p))) out.emplace_back(g, m * static_cast<int>(p));
  }
  return out;
}

std::vector<std::pair<FpPoly, int>> distinct_degree(const FpPoly& f0) {
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly f = f0.monic();
  if (f.degree() <= 0) return out;
  Integer P(static_cast<unsigned long>(f.proto().modulus()));
  FpPoly x = FpPoly::x(f.proto());
  FpPoly h = x % f;
  int i = 0;
  while (2 * (i + 1) <= f.degree()) {
    ++i;
    h = pow_mod(h, P, f);
    FpPoly g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      f = FpPoly::div_exact(f, g);
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f, f.degree());
  return out;
}

std::vector<FpPoly> equal_degree(const FpPoly& f0, int d) {
  FpPoly f = f0.monic();
  if (f.degree() <= d) return {f};
  std::uint64_t p = f.proto().modulus();
  std::mt19937_64 rng(0x5eed0f00dULL + static_cast<std::uint64_t>(f.degree()) * 131 + p);
  Integer e = (power(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
  while (true) {
    std::vector<PrimeFieldElement> v;
    for (int i = 0; i < f.degree(); ++i) v.push_back(random_element(p, rng));
    FpPoly a(std::move(v), f.proto());
    if (a.degree() <= 0) continue;
    FpPoly g = gcd(a, f);
    if (g.degree() <= 0) g = gcd(pow_mod(a, e, f) - f.one(), f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      auto left = equal_degree(g, d);
      auto right = equal_degree(FpPoly::div_exact(f, g), d);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

Factorization<PrimeFieldElement> factor_over_Fp(const FpPoly& f) {
  if (f.is_zero()) throw ArithmeticError("factorization of the zero polynomial");
  Factorization<PrimeFieldElement> r{f.lc(), {}};
  for (const auto& [g, m] : squarefree_decomposition(f)) {
    for (const auto& [h, d] : distinct_degree(g)) {
      for (auto& q : equal_degree(h, d)) r.factors.emplace_back(q, m);
    }
  }
  std::sort(r.factors.begin(), r.factors.end(), [](const auto& a, const auto& b) {
    if (fp_less(a.first, b.first)) return true;
    if (fp_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return r;
}

bool is_irreducible(const FpPoly& f) {
  if (f.degree() < 1) return false;
  auto fac = factor_over_Fp(f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

// ---------------------------------------------------------------------------
// Factorization over Q.

namespace {

using ZPoly = std::vector<Integer>;  // low degree first, trimmed

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

Integer mod_pos(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

ZPoly zmod(ZPoly a, const Integer& m, bool symmetric) {
  Integer half = m / 2;
  for (auto& c : a) {
    c = mod_pos(c, m);
    if (symmetric && c > half) c -= m;
  }
  ztrim(a);
  return a;
}

/// Exact division by a monic integer polynomial; false if not divisible.
bool zdiv_monic(const ZPoly& a, const ZPoly& b, ZPoly& q) {
  ZPoly r = a;
  int db = zdeg(b);
  if (zdeg(r) < db) {
    q.clear();
    return r.empty();
  }
  q.assign(static_cast<std::size_t>(zdeg(r) - db + 1), Integer(0));
  while (!r.empty() && zdeg(r) >= db) {
    int k = zdeg(r) - db;
    Integer c = r.back();
    q[static_cast<std::size_t>(k)] = c;
    for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(i + k)] -= c * b[static_cast<std::size_t>(i)];
    ztrim(r);
  }
  return r.empty();
}

FpPoly to_fp(const ZPoly& a, std::uint64_t p) {
  std::vector<PrimeFieldElement> v;
  for (const auto& c : a) v.push_back(PrimeFieldElement::from_integer(p, c));
  return FpPoly(std::move(v), PrimeFieldElement(p, 0));
}

ZPoly from_fp(const FpPoly& a) {
  ZPoly r;
  for (const auto& c : a.coeffs()) r.emplace_back(static_cast<unsigned long>(c.value()));
  ztrim(r);
  return r;
}

ZPoly primitive_integer(const QPoly& f) {
  Integer l = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
  ZPoly z;
  for (const auto& c : f.coeffs()) z.push_back(c.num() * (l / c.den()));
  Integer g = 0;
  for (const auto& c : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (z.back() < 0) g = -g;
  for (auto& c : z) c /= g;
  return z;
}

QPoly to_monic_q(const ZPoly& z) {
  std::vector<Rational> v;
  for (const auto& c : z) v.emplace_back(c);
  return QPoly(std::move(v), Rational()).monic();
}

/// Lift f = a*b (mod p) with a, b monic and f monic to f = A*B (mod p^k).
void hensel_pair(const ZPoly& f, ZPoly& a, ZPoly& b, std::uint64_t p, unsigned k) {
  FpPoly ap = to_fp(a, p), bp = to_fp(b, p);
  auto eg = xgcd(ap, bp);
  if (eg.g.degree() != 0) throw ArithmeticError("Hensel lifting: factors not coprime mod p");
  FpPoly s = eg.s, t = eg.t;
  Integer m = static_cast<unsigned long>(p);
  Integer P = static_cast<unsigned long>(p);
  for (unsigned step = 1; step < k; ++step) {
    ZPoly prod = zmul(a, b);
    ZPoly diff = f;
    if (prod.size() > diff.size()) diff.resize(prod.size(), Integer(0));
    for (std::size_t i = 0; i < prod.size(); ++i) diff[i] -= prod[i];
    ztrim(diff);
    for (auto& c : diff) {
      if (!mpz_divisible_p(c.get_mpz_t(), m.get_mpz_t())) throw ArithmeticError("Hensel lifting invariant violated");
      c /= m;
    }
    FpPoly e = to_fp(diff, p);
    auto [q, alpha] = FpPoly::divmod(t * e, ap);
    FpPoly beta = s * e + q * bp;
    ZPoly al = from_fp(alpha), be = from_fp(beta);
    if (al.size() > a.size()) a.resize(al.size(), Integer(0));
    for (std::size_t i = 0; i < al.size(); ++i) a[i] += m * al[i];
    if (be.size() > b.size()) b.resize(be.size(), Integer(0));
    for (std::size_t i = 0; i < be.size(); ++i) b[i] += m * be[i];
    m *= P;
    a = zmod(a, m, false);
    b = zmod(b, m, false);
  }
}

std::vector<ZPoly> hensel_multi(const ZPoly& f, const std::vector<FpPoly>& mods, std::uint64_t p, unsigned k) {
  if (mods.size() == 1) return {f};
  std::size_t h = mods.size() / 2;
  FpPoly A = mods[0].one(), B = mods[0].one();
  for (std::size_t i = 0; i < h; ++i) A = A * mods[i];
  for (std::size_t i = h; i < mods.size(); ++i) B = B * mods[i];
  ZPoly a = from_fp(A), b = from_fp(B);
  hensel_pair(f, a, b, p, k);
  std::vector<FpPoly> left(mods.begin(), mods.begin() + static_cast<long>(h)), right(mods.begin() + static_cast<long>(h), mods.end());
  auto la = hensel_multi(a, left, p, k);
  auto rb = hensel_multi(b, right, p, k);
  la.insert(la.end(), rb.begin(), rb.end());
  return la;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Irreducible factors (primitive, positive leading coefficient) of a
/// squarefree primitive integer polynomial.
std::vector<ZPoly> factor_squarefree_Z(const ZPoly& f) {
  int n = zdeg(f);
  if (n <= 1) return {f};
  Integer lc = f.back();
  // Monic transform F(x) = lc^(n-1) f(x / lc).
  ZPoly F(f.size());
  for (int i = 0; i <= n; ++i) {
    F[static_cast<std::size_t>(i)] = (i == n) ? Integer(1) : f[static_cast<std::size_t>(i)] * power(lc, static_cast<unsigned long>(n - 1 - i));
  }
  std::uint64_t p = 3;
  for (;; p += 2) {
    if (!is_prime(p)) continue;
    FpPoly fp = to_fp(F, p);
    if (is_squarefree(fp)) break;
  }
  auto fac = factor_over_Fp(to_fp(F, p));
  std::vector<FpPoly> mods;
  for (auto& [g, m] : fac.factors) mods.push_back(g);
  std::vector<ZPoly> found;
  if (mods.size() > 1) {
    Integer norm2 = 0;
    for (const auto& c : F) norm2 += c * c;
    Integer norm;
    mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
    norm += 1;
    Integer bound = 2 * power(Integer(2), static_cast<unsigned long>(n)) * norm;
    Integer M = static_cast<unsigned long>(p);
    unsigned k = 1;
    while (M <= bound) {
      M *= static_cast<unsigned long>(p);
      ++k;
    }
    auto lifted = hensel_multi(F, mods, p, k);
    ZPoly cur = F;
    std::size_t s = 1;
    while (2 * s <= lifted.size()) {
      std::vector<std::size_t> idx(s);
      std::iota(idx.begin(), idx.end(), 0);
      bool hit = false;
      do {
        ZPoly g{Integer(1)};
        for (auto i : idx) g = zmod(zmul(g, lifted[i]), M, true);
        if (g.front() != 0 && cur.front() != 0 && !mpz_divisible_p(cur.front().get_mpz_t(), g.front().get_mpz_t())) continue;
        ZPoly q;
        if (zdiv_monic(cur, g, q)) {
          found.push_back(g);
          cur = q;
          for (auto it = idx.rbegin(); it != idx.rend(); ++it) lifted.erase(lifted.begin() + static_cast<long>(*it));
          hit = true;
          break;
        }
      } while (next_combination(idx, lifted.size()));
      if (!hit) ++s;
    }
    if (zdeg(cur) > 0) found.push_back(cur);
  } else {
    found.push_back(F);
  }
  // Undo the transform: g(x) -> primitive part of g(lc * x).
  std::vector<ZPoly> out;
  for (auto& g : found) {
    ZPoly h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) h[i] = g[i] * power(lc, static_cast<unsigned long>(i));
    Integer c = 0;
    for (const auto& x : h) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
    if (h.back() < 0) c = -c;
    for (auto& x : h) x /= c;
    out.push_back(h);
  }
  return out;
}

std::vector<std::pair<QPoly, int>> squarefree_decomposition_q(const QPoly& f0) {
  std::vector<std::pair<QPoly, int>> out;
  QPoly f = f0.monic();
  QPoly c = gcd(f, f.derivative());
  QPoly w = QPoly::div_exact(f, c);
  int i = 1;
  while (w.degree() > 0) {
    QPoly y = gcd(w, c);
    QPoly z = QPoly::div_exact(w, y);
    if (z.degree() > 0) out.emplace_back(z, i);
    ++i;
    w = y;
    c = QPoly::div_exact(c, y);
  }
  return out;
}

bool q_less(const QPoly& a, const QPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

}  // namespace

Factorization<Rational> factor_over_Q(const QPoly& f) {
  if (f.is_zero()) throw ArithmeticError("factorization of the zero polynomial");
  Factorization<Rational> r{f.lc(), {}};
  for (const auto& [g, m] : squarefree_decomposition_q(f)) {
    for (const auto& z : factor_squarefree_Z(primitive_integer(g))) r.factors.emplace_back(to_monic_q(z), m);
  }
  std::sort(r.factors.begin(), r.factors.end(), [](const auto& a, const auto& b) {
    if (q_less(a.first, b.first)) return true;
    if (q_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return r;
}

// ---------------------------------------------------------------------------
// Factorization over Q(sqrt d).

KPoly to_kpoly(const QPoly& f, const Integer& d) {
  QuadraticFieldElement z(d, Rational(), Rational());
  std::vector<QuadraticFieldElement> v;
  for (const auto& c : f.coeffs()) v.push_back(z.embed(c));
  return KPoly(std::move(v), z);
}

KPoly conj(const KPoly& f) {
  std::vector<QuadraticFieldElement> v;
  for (const auto& c : f.coeffs()) v.push_back(c.conj());
  return KPoly(std::move(v), f.proto());
}

Factorization<QuadraticFieldElement> factor_over_quadratic_field(const QPoly& f, const Integer& d) {
  QuadraticFieldElement zero(d, Rational(), Rational());
  Factorization<QuadraticFieldElement> out{zero.embed(f.lc()), {}};
  auto qf = factor_over_Q(f);
  for (const auto& [G, m] : qf.factors) {
    KPoly GK = to_kpoly(G, d);
    if (G.degree() <= 1) {
      out.factors.emplace_back(GK, m);
      continue;
    }
    QuadraticFieldElement w = QuadraticFieldElement::sqrt_d(d);
    for (long s = 1;; ++s) {
      QuadraticFieldElement sw = w * zero.from_integer(Integer(s));
      KPoly shift_minus(std::vector<QuadraticFieldElement>{-sw, zero.one()}, zero);
      KPoly shift_plus(std::vector<QuadraticFieldElement>{sw, zero.one()}, zero);
      KPoly NK = GK.compose(shift_minus) * GK.compose(shift_plus);
      std::vector<Rational> nc;
      for (const auto& c : NK.coeffs()) {
        if (!c.is_rational()) throw ArithmeticError("norm polynomial is not rational");
        nc.push_back(c.a());
      }
      QPoly N(std::move(nc), Rational());
      if (!is_squarefree(N)) continue;
      auto nf = factor_over_Q(N);
      if (nf.factors.size() == 1) {
        out.factors.emplace_back(GK, m);
      } else {
        for (const auto& [Ni, mi] : nf.factors) {
          KPoly H = gcd(GK, to_kpoly(Ni, d).compose(shift_plus));
          out.factors.emplace_back(H, m);
        }
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

int sign_changes(const std::vector<int>& signs) {
  int c = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++c;
    last = s;
  }
  return c;
}

std::vector<QPoly> sturm_chain(const QPoly& f) {
  if (f.is_zero()) throw ArithmeticError("Sturm sequence of the zero polynomial");
  QPoly g = f.degree() > 0 ? QPoly::div_exact(f, gcd(f, f.derivative())) : f;
  std::vector<QPoly> chain{g, g.derivative()};
  while (!chain.back().is_zero()) {
    QPoly r = -(chain[chain.size() - 2] % chain.back());
    if (r.is_zero()) break;
    chain.push_back(r);
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

}  // namespace

int sturm_real_roots(const QPoly& f) {
  auto chain = sturm_chain(f);
  std::vector<int> at_pos, at_neg;
  for (const auto& p : chain) {
    int s = p.lc().sign();
    at_pos.push_back(s);
    at_neg.push_back(p.degree() % 2 == 0 ? s : -s);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

int sturm_real_roots(const QPoly& f, const Rational& a, const Rational& b) {
  auto chain = sturm_chain(f);
  std::vector<int> sa, sb;
  for (const auto& p : chain) {
    sa.push_back(p(a).sign());
    sb.push_back(p(b).sign());
  }
  return sign_changes(sa) - sign_changes(sb);
}

std::pair<Integer, Integer> snf_2x2(const std::array<std::array<long, 2>, 2>& m) {
  Integer det = Integer(m[0][0]) * m[1][1] - Integer(m[0][1]) * m[1][0];
  if (det <= 0) throw ArithmeticError("snf_2x2 requires a positive determinant");
  Integer g = 0;
  for (const auto& row : m)
    for (long v : row) {
      Integer vv(v);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), vv.get_mpz_t());
    }
  return {g, det / g};
}

std::vector<std::uint64_t> sqrt_mod_p(const Integer& d, std::uint64_t p) {
  PrimeFieldElement x = PrimeFieldElement::from_integer(p, d);
  PrimeFieldElement r;
  if (!field_sqrt(x, r)) return {};
  std::uint64_t a = r.value(), b = (-r).value();
  if (a == b) return {a};
  return {std::min(a, b), std::max(a, b)};
}

FiniteFieldElement reduce_mod_prime(const QuadraticFieldElement& x, std::uint64_t p) {
  if (!is_prime(p) || p == 2) throw ArithmeticError("reduction requires an odd prime");
  PrimeFieldElement a = PrimeFieldElement::from_rational(p, x.a());
  PrimeFieldElement b = PrimeFieldElement::from_rational(p, x.b());
  if (!x.typed() || x.b().is_zero()) {
    return FiniteFieldElement(FiniteField::create(p, {0, 1}), {a.value()});
  }
  auto roots = sqrt_mod_p(x.d(), p);
  if (!roots.empty()) {
    PrimeFieldElement r(p, static_cast<std::int64_t>(roots[0]));
    return FiniteFieldElement(FiniteField::create(p, {0, 1}), {(a + b * r).value()});
  }
  std::uint64_t md = PrimeFieldElement::from_integer(p, -x.d()).value();
  auto F = FiniteField::create(p, {md, 0, 1});
  return FiniteFieldElement(F, {a.value(), b.value()});
}

PrimeFieldElement reduce_mod_prime(const QuadraticFieldElement& x, std::uint64_t p, std::uint64_t r) {
  PrimeFieldElement rr(p, static_cast<std::int64_t>(r));
  if (x.typed() && !(rr * rr == PrimeFieldElement::from_integer(p, x.d())))
    throw ArithmeticError("chosen root is not a square root of d mod p");
  return PrimeFieldElement::from_rational(p, x.a()) + PrimeFieldElement::from_rational(p, x.b()) * rr;
}

}  // namespace x0quad
