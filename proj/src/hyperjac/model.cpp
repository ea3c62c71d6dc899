#include "x0quad/hyperjac/model.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "x0quad/algebra/finite_field.hpp"

namespace x0quad {

HyperellipticModel HyperellipticModel::make(long n, QPoly h, QPoly f, InvolutionSpec inv) {
  HyperellipticModel m{n, std::move(h), std::move(f), std::move(inv)};
  QPoly F = m.completed();
  if (F.degree() < 5) throw std::invalid_argument("completed model must have degree >= 5");
  if (!is_squarefree(F)) throw std::invalid_argument("completed model is singular (F not squarefree)");
  return m;
}

int HyperellipticModel::genus() const { return (completed().degree() + 1) / 2 - 1; }

Rational HyperellipticModel::infinity_scale() const {
  Rational c;
  if (!rational_sqrt(completed().lc(), c)) throw ArithmeticError("leading coefficient of F is not a square");
  return c;
}

QPoly HyperellipticModel::monic_form() const {
  QPoly F = completed();
  return F * F.lc().inverse();
}

bool has_good_reduction(const HyperellipticModel& m, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) return false;
  if (m.n > 0 && m.n % static_cast<long>(p) == 0) return false;
  QPoly F = m.completed();
  for (const auto& c : F.coeffs())
    if (c.den() % static_cast<unsigned long>(p) == 0) return false;
  FpPoly Fp = reduce_poly(F, p);
  if (Fp.degree() != F.degree()) return false;
  if (m.even_degree()) {
    Rational c;
    if (rational_sqrt(F.lc(), c) && (c.num() % static_cast<unsigned long>(p) == 0 || c.den() % static_cast<unsigned long>(p) == 0))
      return false;
  }
  return is_squarefree(Fp);
}

ReducedModel reduce_model(const HyperellipticModel& m, std::uint64_t p) {
  if (p % 2 == 0) throw BadReduction("p must be odd");
  if (!has_good_reduction(m, p)) throw BadReduction("bad reduction at p = " + std::to_string(p));
  ReducedModel r;
  r.p = p;
  r.genus = m.genus();
  r.F = reduce_poly(m.completed(), p);
  r.monic = r.F.monic();
  if (m.even_degree())
    r.c = PrimeFieldElement::from_rational(p, m.infinity_scale());
  else
    r.c = PrimeFieldElement(p, 1);
  return r;
}

std::vector<std::uint64_t> good_primes(const HyperellipticModel& m, std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> r;
  for (std::uint64_t p = std::max<std::uint64_t>(lo, 3); p <= hi; ++p)
    if (has_good_reduction(m, p)) r.push_back(p);
  return r;
}

namespace {

constexpr std::uint64_t kMaxFieldSize = 100000000;

long count_prime_field(const FpPoly& F) {
  std::uint64_t p = F.proto().modulus();
  std::vector<char> square(p, 0);
  for (std::uint64_t t = 1; t < p; ++t) square[mulmod(t, t, p)] = 1;
  std::vector<std::uint64_t> c;
  for (const auto& a : F.coeffs()) c.push_back(a.value());
  long n = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = (mulmod(v, x, p) + *it) % p;
    n += v == 0 ? 1 : (square[v] ? 2 : 0);
  }
  return n;
}

long count_extension(const FpPoly& F, int k) {
  std::uint64_t p = F.proto().modulus();
  auto field = FiniteField::standard(p, k);
  std::uint64_t q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  if (q > kMaxFieldSize) throw std::invalid_argument("field too large to enumerate");

  auto element = [&](std::uint64_t idx) {
    std::vector<std::uint64_t> v(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i, idx /= p) v[static_cast<std::size_t>(i)] = idx % p;
    return Fq(field, v);
  };
  auto index = [&](const Fq& z) {
    std::uint64_t idx = 0;
    const auto& v = z.value();
    for (auto it = v.rbegin(); it != v.rend(); ++it) idx = idx * p + *it;
    return idx;
  };
  std::vector<Fq> coeffs;
  for (const auto& a : F.coeffs()) coeffs.push_back(Fq::from_int(field, static_cast<std::int64_t>(a.value())));

  std::vector<char> square(q, 0);
  unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  if (q < 65536) workers = 1;
  auto run = [&](auto&& body) {
    std::vector<std::thread> pool;
    std::vector<long> partial(workers, 0);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::uint64_t i = w; i < q; i += workers) partial[w] += body(i);
      });
    for (auto& t : pool) t.join();
    return std::accumulate(partial.begin(), partial.end(), 0L);
  };
  for (std::uint64_t i = 0; i < q; ++i) {
    Fq z = element(i);
    square[index(z * z)] = 1;
  }
  return run([&](std::uint64_t i) {
    Fq x = element(i), v = x.zero();
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    if (v.is_zero()) return 1L;
    return square[index(v)] ? 2L : 0L;
  });
}

}  // namespace

long count_points(const FpPoly& F, int k) {
  if (k < 1) throw std::invalid_argument("extension degree must be positive");
  long affine = k == 1 ? count_prime_field(F) : count_extension(F, k);
  if (F.degree() % 2) return affine + 1;
  bool lc_square = k % 2 == 0 || F.lc().legendre() == 1;
  return affine + (lc_square ? 2 : 0);
}

long count_points(const ReducedModel& m, int k) { return count_points(m.F, k); }

Integer LPolynomial::at_one() const { return std::accumulate(a.begin(), a.end(), Integer(0)); }

LPolynomial l_polynomial_from_counts(std::uint64_t p, int g, const std::vector<long>& counts) {
  if (static_cast<int>(counts.size()) < g) throw std::invalid_argument("need counts for k = 1..g");
  Integer P(static_cast<unsigned long>(p));
  std::vector<Integer> s(static_cast<std::size_t>(g) + 1);
  for (int k = 1; k <= g; ++k) {
    Integer pk = power(P, static_cast<unsigned long>(k));
    Integer t = pk + 1 - counts[static_cast<std::size_t>(k - 1)];
    if (t * t > 4 * g * g * pk) throw ArithmeticError("point count violates the Weil bound");
    s[static_cast<std::size_t>(k)] = t;
  }
  LPolynomial L;
  L.p = p;
  L.a.assign(static_cast<std::size_t>(2 * g) + 1, Integer(0));
  L.a[0] = 1;
  for (int k = 1; k <= g; ++k) {
    Integer acc = 0;
    for (int i = 1; i <= k; ++i) acc += s[static_cast<std::size_t>(i)] * L.a[static_cast<std::size_t>(k - i)];
    if (acc % k != 0) throw ArithmeticError("inconsistent point counts");
    L.a[static_cast<std::size_t>(k)] = -acc / k;
  }
  for (int i = 0; i < g; ++i)
    L.a[static_cast<std::size_t>(2 * g - i)] = power(P, static_cast<unsigned long>(g - i)) * L.a[static_cast<std::size_t>(i)];
  return L;
}

LPolynomial l_polynomial(const ReducedModel& m) {
  std::vector<long> counts;
  for (int k = 1; k <= m.genus; ++k) counts.push_back(count_points(m, k));
  return l_polynomial_from_counts(m.p, m.genus, counts);
}

std::string RationalPoint::str() const {
  if (at_infinity) return sign > 0 ? "inf+" : (sign < 0 ? "inf-" : "inf");
  return "(" + x.str() + ", " + y.str() + ")";
}

std::vector<RationalPoint> rational_point_search(const HyperellipticModel& m, long H) {
  if (H < 1) throw std::invalid_argument("height bound must be positive");
  QPoly F = m.completed();
  int D = F.degree();
  std::vector<Integer> Fi;
  for (const auto& c : F.coeffs()) {
    if (!c.is_integer()) throw std::invalid_argument("completed model must have integer coefficients");
    Fi.push_back(c.num());
  }
  int half = (D + 1) / 2;  // g + 1
  std::vector<RationalPoint> pts;
  if (D % 2 == 0) {
    Rational c;
    if (rational_sqrt(F.lc(), c)) {
      pts.push_back({true, 1, {}, {}});
      pts.push_back({true, -1, {}, {}});
    }
  } else {
    pts.push_back({true, 0, {}, {}});
  }
  std::vector<RationalPoint> affine;
  for (long b = 1; b <= H; ++b)
    for (long a = -H; a <= H; ++a) {
      if (std::gcd(a, b) != 1) continue;
      Integer A(a), B(b), val = 0;
      for (int i = D; i >= 0; --i) val = val * A + Fi[static_cast<std::size_t>(i)] * power(B, static_cast<unsigned long>(D - i));
      // val = b^D F(a/b); with D even b^D is a square.  For odd D multiply through by b.
      if (D % 2) val *= B;
      if (val < 0 || mpz_perfect_square_p(val.get_mpz_t()) == 0) continue;
      Integer s = sqrt(val);
      Rational x(A, B);
      Rational scale(Integer(1), power(B, static_cast<unsigned long>(half)));
      for (int sg : {1, -1}) {
        Rational v = Rational(s) * scale * Rational(sg);
        Rational y = (v - m.h(x)) * Rational(1, 2);
        affine.push_back({false, 0, x, y});
        if (s == 0) break;
      }
    }
  std::sort(affine.begin(), affine.end(), [](const RationalPoint& p, const RationalPoint& q) {
    return p.x != q.x ? p.x < q.x : p.y < q.y;
  });
  pts.insert(pts.end(), affine.begin(), affine.end());
  return pts;
}

long rational_cusp_count(long n) {
  long c = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0 && std::gcd(d, n / d) <= 2) ++c;
  return c;
}

}  // namespace x0quad
