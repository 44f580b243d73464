#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace symp::suite {

/// Malformed config or command line; maps to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Record {
  std::string suite;
  std::string check;
  std::string anchor;
  double residual = 0.0;  // NaN when the check could not be evaluated
  double tol = 0.0;
  bool pass = false;
  std::string message;

  bool operator==(const Record&) const = default;
};

struct Report {
  std::vector<Record> records;
  std::optional<double> wall_time;  // seconds, only when timing was requested

  std::size_t total() const { return records.size(); }
  std::size_t passed() const;
  std::size_t failed() const { return total() - passed(); }
  int exit_code() const { return failed() == 0 ? 0 : 1; }
};

enum class Format { Json, Csv, Human };
Format format_from_string(const std::string& s);  // throws ConfigError

/// Sorted keys, floats as %.12e, non-finite residuals as null.
std::string to_json(const Report& report);
std::string to_csv(const Report& report);
std::string to_human(const Report& report);
std::string emit(const Report& report, Format format);

/// Inverse of to_json. Throws ConfigError on a malformed document.
Report report_from_json(const std::string& text);

/// Canonical serialization of an arbitrary document with the same float rule.
std::string canonical_dump(const nlohmann::json& j);

}  // namespace symp::suite
