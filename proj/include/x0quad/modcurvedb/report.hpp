#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace x0quad {

enum class CheckStatus { Ok, Mismatch, Flagged };

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::Ok;
  std::string detail;
};

/// {"n", "checks": [{name, status, detail}]}; n = 0 for dataset-wide reports.
struct Report {
  long n = 0;
  std::vector<Check> checks;

  void add(std::string name, bool ok, std::string detail) {
    checks.push_back({std::move(name), ok ? CheckStatus::Ok : CheckStatus::Mismatch, std::move(detail)});
  }
  void flag(std::string name, std::string detail) {
    checks.push_back({std::move(name), CheckStatus::Flagged, std::move(detail)});
  }
  bool ok() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Mismatch) return false;
    return true;
  }
};

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Ok: return "ok";
    case CheckStatus::Mismatch: return "mismatch";
    case CheckStatus::Flagged: return "flagged";
  }
  return "?";
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back({{"name", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}});
  return j;
}

}  // namespace x0quad
