#pragma once

#include <iosfwd>

namespace x0quad::cli {

/// Exit codes: 0 all checks ok or flagged, 1 mismatch, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv, runs one subcommand and writes a single JSON document to out.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace x0quad::cli
