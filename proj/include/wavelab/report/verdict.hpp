#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wavelab/report/config.hpp"

namespace wavelab::report {

enum class Relation { within, below, above };

struct CheckEntry {
  int criterion = 0;
  std::string name;
  std::string anchor;
  double expected = 0;
  double computed = 0;
  double tolerance = 0;
  Relation relation = Relation::within;
  bool pass = false;
};

struct VerdictReport {
  std::vector<CheckEntry> checks;
  nlohmann::json environment;

  bool pass() const;
  bool criterion_pass(int criterion) const;
};

/// Runs the ten acceptance criteria. The radial grid (r_max, n) comes from
/// cfg; every other setting is pinned.
VerdictReport run_verification(const RunConfig& cfg);

nlohmann::json to_json(const VerdictReport& report);

inline constexpr int criterion_count = 10;
const char* criterion_title(int criterion);

}  // namespace wavelab::report
