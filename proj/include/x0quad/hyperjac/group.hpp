#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "x0quad/algebra/quadratic.hpp"
#include "x0quad/hyperjac/jacobian.hpp"
#include "x0quad/hyperjac/model.hpp"

namespace x0quad {

/// Z/e1 + ... + Z/ek with e1 | e2 | ... | ek, all ei > 1.
class AbelianGroupStructure {
 public:
  AbelianGroupStructure() = default;
  /// Accepts any list of cyclic orders and normalizes to invariant factors.
  explicit AbelianGroupStructure(const std::vector<long>& cyclic_orders);
  /// From l-primary exponent partitions (descending or not).
  static AbelianGroupStructure from_primary(const std::map<long, std::vector<int>>& parts);

  const std::vector<long>& invariants() const { return e_; }
  long order() const;
  /// Exponents of the l-primary part, descending.
  std::vector<int> primary(long l) const;
  std::map<long, std::vector<int>> primary_parts() const;
  int rank(long l) const { return static_cast<int>(primary(l).size()); }
  /// Drop the l-primary part.
  AbelianGroupStructure without(long l) const;
  /// Largest group embeddable in both (componentwise minimum of partitions).
  AbelianGroupStructure meet(const AbelianGroupStructure& o) const;
  /// True when this group embeds in o.
  bool embeds_in(const AbelianGroupStructure& o) const;
  std::string str() const;

  friend bool operator==(const AbelianGroupStructure&, const AbelianGroupStructure&) = default;

 private:
  std::vector<long> e_;
};

std::vector<std::pair<long, int>> factor_small(long n);

/// A finite subgroup of a Jacobian enumerated element by element.
template <class T>
class EnumeratedSubgroup {
 public:
  using Divisor = MumfordDivisor<T>;

  explicit EnumeratedSubgroup(const Jacobian<T>& J) : J_(&J) { insert(J.zero()); }

  std::size_t size() const { return elems_.size(); }
  bool contains(const Divisor& D) const { return index_.count(J_->key(D)) > 0; }
  const std::vector<Divisor>& elements() const { return elems_; }

  /// Replace H by <H, x>, coset by coset.  `limit` guards against runaway growth.
  void adjoin(const Divisor& x, std::size_t limit = 2000000) {
    if (contains(x)) return;
    std::vector<Divisor> base = elems_;
    Divisor c = x;
    while (!contains(c)) {
      for (const auto& h : base) insert(J_->add(h, c));
      if (elems_.size() > limit) throw std::runtime_error("subgroup enumeration exceeded its limit");
      c = J_->add(c, x);
    }
  }

  /// Structure from the l^j-torsion counts of each primary part.
  AbelianGroupStructure structure() const {
    long n = static_cast<long>(size());
    std::map<long, std::vector<int>> parts;
    for (auto [l, e] : factor_small(n)) {
      // v_l(order(x)) for every element via repeated multiplication by l on the l-part.
      long cof = n;
      for (int i = 0; i < e; ++i) cof /= l;
      std::vector<long> count(static_cast<std::size_t>(e) + 1, 0);
      for (const auto& x : elems_) {
        Divisor y = J_->mul(x, Integer(cof));
        int j = 0;
        while (!J_->is_zero(y)) {
          y = J_->mul(y, Integer(l));
          ++j;
        }
        ++count[static_cast<std::size_t>(j)];
      }
      // #G[l^j] = l^(t_j); number of invariants with exponent >= j is t_j - t_{j-1}.
      std::vector<int> t(static_cast<std::size_t>(e) + 1, 0);
      long acc = 0;
      for (int j = 0; j <= e; ++j) {
        acc += count[static_cast<std::size_t>(j)];
        long v = acc;
        int tj = 0;
        while (v % l == 0 && v > 1) {
          v /= l;
          ++tj;
        }
        t[static_cast<std::size_t>(j)] = tj;
      }
      std::vector<int> part;
      for (int j = e; j >= 1; --j) {
        int with_at_least_j = t[static_cast<std::size_t>(j)] - t[static_cast<std::size_t>(j - 1)];
        int with_at_least_next = j < e ? t[static_cast<std::size_t>(j + 1)] - t[static_cast<std::size_t>(j)] : 0;
        for (int k = 0; k < with_at_least_j - with_at_least_next; ++k) part.push_back(j);
      }
      parts[l] = part;
    }
    return AbelianGroupStructure::from_primary(parts);
  }

 private:
  void insert(const Divisor& D) {
    auto [it, fresh] = index_.emplace(J_->key(D), elems_.size());
    if (fresh) elems_.push_back(D);
  }

  const Jacobian<T>* J_;
  std::vector<Divisor> elems_;
  std::unordered_map<std::string, std::size_t> index_;
};

using FpJacobian = Jacobian<PrimeFieldElement>;
using FpDivisor = MumfordDivisor<PrimeFieldElement>;
using QJacobian = Jacobian<Rational>;
using QDivisor = MumfordDivisor<Rational>;

FpJacobian jacobian_mod_p(const ReducedModel& m);
QJacobian jacobian_over_Q(const HyperellipticModel& m);

/// Random class: sum of prime divisors of random degrees with random weights at infinity.
FpDivisor random_divisor(const FpJacobian& J, std::mt19937_64& rng);

/// Order of a class dividing N.
long element_order(const FpJacobian& J, const FpDivisor& D, long N);

constexpr std::uint64_t kDefaultSeed = 0x5eed2024ULL;

/// J(F_p) from L(1) and Sylow subgroups grown from random elements.
AbelianGroupStructure group_structure(const ReducedModel& m, std::uint64_t seed = kDefaultSeed);
/// The l-primary part of J(F_p) only.
AbelianGroupStructure sylow_structure(const ReducedModel& m, long l, std::uint64_t seed = kDefaultSeed);
/// All of J(F_p) enumerated (small groups only).
EnumeratedSubgroup<PrimeFieldElement> enumerate_group(const FpJacobian& J, long order, std::uint64_t seed = kDefaultSeed);

/// [P - inf+] in J(F_p) for a rational point; points with p | den(x) land on inf+-.
FpDivisor reduce_point(const HyperellipticModel& m, const FpJacobian& J, const ReducedModel& r, const RationalPoint& P);
/// [P - inf+] over Q.
QDivisor point_class(const HyperellipticModel& m, const QJacobian& J, const RationalPoint& P);

struct CuspidalData {
  std::uint64_t p = 0;
  std::vector<RationalPoint> cusps;
  AbelianGroupStructure structure;
};

/// Subgroup of J(F_p) generated by differences of the reduced rational cusps.
/// Throws BadReduction if p divides its order.
CuspidalData cuspidal_subgroup(const HyperellipticModel& m, std::uint64_t p, long height = 20);

struct TorsionBound {
  AbelianGroupStructure bound;
  std::map<std::uint64_t, AbelianGroupStructure> reductions;
  std::map<std::uint64_t, Integer> orders;
};

/// Meet over primes of the prime-to-p parts of J(F_p).
TorsionBound torsion_bound(const HyperellipticModel& m, const std::vector<std::uint64_t>& primes,
                           std::uint64_t seed = kDefaultSeed);

/// Largest J(F_p) order group_structure will enumerate.
inline constexpr long kMaxEnumerable = 10000000;

/// Meet over p != l of the l-primary parts. Throws if some l-part sees no other prime.
AbelianGroupStructure bound_from_reductions(const std::map<std::uint64_t, AbelianGroupStructure>& reductions);

/// Largest p^g for which torsion_bound_search counts points over F_(p^g).
inline constexpr double kMaxCountedField = 2e6;

/// Adds good candidate primes in order until the bound reaches target.
TorsionBound torsion_bound_search(const HyperellipticModel& m, const AbelianGroupStructure& target,
                                  const std::vector<std::uint64_t>& candidates, std::uint64_t seed = kDefaultSeed);

struct TwoTorsionBounds {
  AbelianGroupStructure lower, upper;
  /// 2-rank of the Galois-invariant classes of even sets of Weierstrass points.
  int galois_rank = 0;
  /// min over the given primes of the 2-rank of J(F_p).
  int reduction_rank = 0;
  /// Quadratic fields Q(sqrt e) over which F splits into conjugate pairs.
  std::vector<long> swap_fields;
  std::uint64_t certificate_prime = 0;
};

/// J(Q)[2]: lower bound from explicitly constructed rational 2-torsion classes
/// (their span, computed after reduction at a prime where all swap fields
/// split); upper bound from the Galois count and the reductions.
TwoTorsionBounds rational_two_torsion(const HyperellipticModel& m, const std::vector<std::uint64_t>& primes,
                                      std::uint64_t seed = kDefaultSeed);

struct DescentResult {
  std::uint64_t p = 0;
  AbelianGroupStructure cuspidal, reduction;
  /// |C/2C| and |image of C/2C in J(F_p)/2J(F_p)|.
  long quotient_order = 0, image_order = 0;
  bool injective = false;
  /// Negative control: the same map restricted to 2C.
  bool control_injective = false;
  bool two_torsion_contained = false;
  bool equals_cuspidal = false;
};

/// C/2C -> J(F_p)/2J(F_p) injective and J(Q)[2] inside C imply J(Q) = C.
DescentResult descent48_check(const HyperellipticModel& m, std::uint64_t p = 5, std::uint64_t seed = kDefaultSeed);

/// Q-rational Mumford data (u, v) of P + sigma(P) for a quadratic point with irrational x.
std::pair<QPoly, QPoly> conjugate_pair_mumford(const HyperellipticModel& m, const QuadraticFieldElement& x,
                                               const QuadraticFieldElement& y);

struct ClassOrder {
  bool fiber = false;  // rational x: P + sigma(P) is a fibre of x, class 0
  long order = 1;
  Integer group_order;
};

/// Order of [P + sigma(P) - inf+ - inf-] in J(F_p).
ClassOrder class_order_mod_p(const HyperellipticModel& m, const QuadraticFieldElement& x,
                             const QuadraticFieldElement& y, std::uint64_t p);

}  // namespace x0quad
