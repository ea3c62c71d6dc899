// Runs report-all and prints one PASS/FAIL line per criterion.  Exits 0 when the
// failing set is exactly the documented one, so a new failure or an unexpected
// pass both break the build.
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "x0quad/cli/run.hpp"

namespace {

// 1: printed y of X0(29) P2 is off its model.
// 4: J(F_7) for n = 39 is (Z/2)^3 + Z/84, printed with Z/28.
// 6: the prime-to-p meet for n = 71 keeps a second Z/5 at every affordable prime.
// 10: n = 26 has exceptional classes with no row; n = 50 has 6, not 4.
// 11: X0(29) P2 again.
const std::set<int> kKnownFailures{1, 4, 6, 10, 11};

}  // namespace

int main(int argc, char** argv) {
  std::vector<const char*> args{"x0quad", "report-all"};
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  std::ostringstream out, err;
  int code = x0quad::cli::run(static_cast<int>(args.size()), args.data(), out, err);
  if (code == x0quad::cli::kExitUsage) {
    std::cerr << err.str();
    return 2;
  }
  auto doc = nlohmann::json::parse(out.str());
  std::set<int> failing;
  for (const auto& r : doc.at("reports")) {
    int id = r.at("criterion").get<int>();
    bool pass = r.at("status") == "ok";
    if (!pass) failing.insert(id);
    std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << r.at("key").get<std::string>() << "\n";
    if (!pass)
      for (const auto& c : r.at("checks"))
        if (c.at("status") == "mismatch")
          std::cout << "    " << c.at("name").get<std::string>() << ": " << c.at("detail").get<std::string>() << "\n";
  }
  bool expected = failing == kKnownFailures;
  std::cout << (expected ? "failing set matches the documented discrepancies" : "failing set differs from the documented one")
            << "\n";
  return expected ? 0 : 1;
}
