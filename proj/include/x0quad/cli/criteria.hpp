#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "x0quad/hyperjac/group.hpp"
#include "x0quad/modcurvedb/database.hpp"

namespace x0quad::cli {

inline const std::vector<std::uint64_t> kDefaultPrimes{3, 5, 7, 11, 13, 17, 19, 23};

struct Options {
  std::vector<std::uint64_t> primes = kDefaultPrimes;
  long prec = 50;
  long height = 20;
  std::uint64_t seed = kDefaultSeed;
};

/// The primes of o.primes at which m has good reduction.
std::vector<std::uint64_t> usable_primes(const HyperellipticModel& m, const Options& o);

struct CriterionInfo {
  int id;
  const char* key;
  const char* title;
};

/// The twelve reproduction criteria, in order.
const std::vector<CriterionInfo>& criteria();

/// One report per criterion (n = 0); throws std::out_of_range for an unknown id.
Report criterion_report(int id, const Database& db, const Options& o);

/// Randomized invariants across all modules; `cases` per property, fixed seed.
Report property_suite(const Database& db, std::uint64_t seed, int cases = 1000);

}  // namespace x0quad::cli
