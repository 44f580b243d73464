#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symp/suite/report.hpp"

namespace symp::suite {

enum class Kind { Pair, Malliavin, Modular, Network, Defect };
std::string to_string(Kind k);
Kind kind_from_string(const std::string& s);  // throws ConfigError

struct SuiteEntry {
  Kind kind = Kind::Pair;
  std::string name;         // label used in records; defaults to the kind
  nlohmann::json params;    // kind-specific, validated by parse_config
  double tol = 0.0;
};

struct SuiteConfig {
  std::vector<SuiteEntry> suites;
};

/// Tolerance used when a suite omits "tol": SYMPAIR_TOL if set, else 1e-10.
/// Throws ConfigError on an unparsable or negative SYMPAIR_TOL.
double default_tolerance();

/// {"suites":[{"kind":..., "params":{...}, "tol":t, "name":...}]}.
/// Validates every entry; relative file paths resolve against base_dir.
SuiteConfig parse_config(const nlohmann::json& j, const std::string& base_dir = "");
SuiteConfig parse_config_file(const std::string& path);

/// Runs the suites in config order. Math-domain failures become failed
/// records carrying the error message.
Report run_suite(const SuiteConfig& config);

/// Checks for one suite entry.
std::vector<Record> run_entry(const SuiteEntry& entry);

}  // namespace symp::suite
