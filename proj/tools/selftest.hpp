#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

struct SelftestCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelftestReport {
  std::uint64_t seed = 0;
  std::vector<SelftestCheck> checks;
  bool all_pass = true;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// Runs a fixed battery of exact checks on inputs drawn from `seed`. The
/// report contains no timings, so equal seeds give equal reports.
SelftestReport run_selftest(std::uint64_t seed);
