#include "x0quad/algebra/rational.hpp"

#include <cctype>

namespace x0quad {

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

Rational Rational::inverse() const {
  if (is_zero()) throw ArithmeticError("inverse of zero rational");
  Rational r;
  mpq_inv(r.q_.get_mpq_t(), q_.get_mpq_t());
  return r;
}

Rational Rational::operator-() const {
  Rational r;
  r.q_ = -q_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero rational");
  q_ /= o.q_;
  return *this;
}

std::size_t Rational::hash() const {
  std::size_t h = std::hash<std::string>{}(q_.get_str(16));
  return h;
}

bool rational_sqrt(const Rational& r, Rational& root) {
  if (r.sign() < 0) return false;
  Integer n = r.num(), d = r.den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  root = Rational(sn, sd);
  return true;
}

namespace {

Integer pollard_brent(const Integer& n, unsigned long c) {
  // In-place mpz arithmetic: this loop dominates the cost of factoring.
  mpz_srcptr N = n.get_mpz_t();
  Integer y = 2, x, q = 1, g = 1, ys, t;
  auto step = [&](Integer& z) {
    mpz_mul(z.get_mpz_t(), z.get_mpz_t(), z.get_mpz_t());
    mpz_add_ui(z.get_mpz_t(), z.get_mpz_t(), c);
    mpz_mod(z.get_mpz_t(), z.get_mpz_t(), N);
  };
  unsigned long r = 1, m = 128;
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) step(y);
    for (unsigned long k = 0; k < r && g == 1; k += m) {
      ys = y;
      for (unsigned long i = 0; i < m && i < r - k; ++i) {
        step(y);
        mpz_sub(t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        mpz_mul(q.get_mpz_t(), q.get_mpz_t(), t.get_mpz_t());
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), N);
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), N);
    }
    r *= 2;
  }
  if (g == n) {
    do {
      step(ys);
      mpz_sub(t.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), N);
    } while (g == 1);
  }
  return g;
}

void split(const Integer& n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    ++out[n];
    return;
  }
  Integer root;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    std::map<Integer, int> half;
    split(root, half);
    for (auto& [p, e] : half) out[p] += 2 * e;
    return;
  }
  for (unsigned long c = 1;; ++c) {
    Integer d = pollard_brent(n, c);
    if (d != n) {
      split(d, out);
      split(Integer(n / d), out);
      return;
    }
  }
}

}  // namespace

std::map<Integer, int> factor_integer(const Integer& n) {
  if (n == 0) throw ArithmeticError("factorization of zero");
  Integer m = abs(n);
  std::map<Integer, int> out;
  for (unsigned long p = 2; p < 10000 && Integer(p) * p <= m; ++p)
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++out[Integer(p)];
    }
  split(m, out);
  return out;
}

Integer squarefree_part(const Integer& n) {
  if (n == 0) throw ArithmeticError("squarefree part of zero");
  Integer result = 1;
  for (const auto& [p, e] : factor_integer(n))
    if (e % 2 == 1) result *= p;
  return n < 0 ? Integer(-result) : result;
}

Integer squarefree_kernel(const Rational& r) {
  if (r.is_zero()) throw ArithmeticError("squarefree kernel of zero");
  return squarefree_part(Integer(r.num() * r.den()));
}

Integer power(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::string to_string(const Integer& n) { return n.get_str(); }

}  // namespace x0quad
