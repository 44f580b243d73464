#include "symp/suite/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace symp::suite {

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

void dump(const nlohmann::json& j, std::string& out) {
  using T = nlohmann::json::value_t;
  switch (j.type()) {
    case T::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // std::map keeps keys sorted
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(key).dump();
        out += ':';
        dump(value, out);
      }
      out += '}';
      break;
    }
    case T::array: {
      out += '[';
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ',';
        dump(j[k], out);
      }
      out += ']';
      break;
    }
    case T::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

nlohmann::json residual_json(double r) {
  if (std::isfinite(r)) return r;
  return nullptr;
}

template <class T>
T field(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key)) throw ConfigError(std::string("report record is missing '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("report field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::size_t Report::passed() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const Record& r) { return r.pass; }));
}

Format format_from_string(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "human") return Format::Human;
  throw ConfigError("unknown format '" + s + "' (expected json, csv or human)");
}

std::string canonical_dump(const nlohmann::json& j) {
  std::string out;
  dump(j, out);
  return out;
}

std::string to_json(const Report& report) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    records.push_back({{"suite", r.suite},
                       {"check", r.check},
                       {"anchor", r.anchor},
                       {"residual", residual_json(r.residual)},
                       {"tol", r.tol},
                       {"pass", r.pass},
                       {"message", r.message}});
  }
  nlohmann::json summary = {
      {"total", report.total()}, {"passed", report.passed()}, {"failed", report.failed()}};
  if (report.wall_time) summary["wall_time_s"] = *report.wall_time;
  return canonical_dump({{"records", std::move(records)}, {"summary", std::move(summary)}}) + "\n";
}

std::string to_csv(const Report& report) {
  std::string out = "suite,check,anchor,residual,tol,pass\n";
  for (const auto& r : report.records) {
    out += csv_field(r.suite) + ',' + csv_field(r.check) + ',' + csv_field(r.anchor) + ',' +
           (std::isfinite(r.residual) ? format_double(r.residual) : "nan") + ',' +
           format_double(r.tol) + ',' + (r.pass ? "true" : "false") + '\n';
  }
  return out;
}

std::string to_human(const Report& report) {
  std::size_t ws = 5, wc = 5, wa = 6;
  for (const auto& r : report.records) {
    ws = std::max(ws, r.suite.size());
    wc = std::max(wc, r.check.size());
    wa = std::max(wa, r.anchor.size());
  }
  std::ostringstream os;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-4s  %-*s  %-*s  %-*s  %-19s  %-19s", "", static_cast<int>(ws),
                "suite", static_cast<int>(wc), "check", static_cast<int>(wa), "anchor", "residual",
                "tol");
  auto rstrip = [](std::string line) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    return line;
  };
  os << rstrip(buf) << '\n';
  for (const auto& r : report.records) {
    std::snprintf(buf, sizeof buf, "%-4s  %-*s  %-*s  %-*s  %-19s  %-19s", r.pass ? "ok" : "FAIL",
                  static_cast<int>(ws), r.suite.c_str(), static_cast<int>(wc), r.check.c_str(),
                  static_cast<int>(wa), r.anchor.c_str(),
                  std::isfinite(r.residual) ? format_double(r.residual).c_str() : "nan",
                  format_double(r.tol).c_str());
    std::string line = buf;
    if (!r.message.empty()) line += "  " + r.message;
    os << rstrip(line);
    os << '\n';
  }
  os << report.passed() << "/" << report.total() << " checks passed";
  if (report.wall_time) {
    std::snprintf(buf, sizeof buf, " in %.3f s", *report.wall_time);
    os << buf;
  }
  os << '\n';
  return os.str();
}

std::string emit(const Report& report, Format format) {
  switch (format) {
    case Format::Json: return to_json(report);
    case Format::Csv: return to_csv(report);
    case Format::Human: return to_human(report);
  }
  return to_json(report);
}

Report report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("records") || !j.at("records").is_array()) {
    throw ConfigError("report needs a 'records' array");
  }
  Report out;
  for (const auto& r : j.at("records")) {
    Record rec;
    rec.suite = field<std::string>(r, "suite");
    rec.check = field<std::string>(r, "check");
    rec.anchor = field<std::string>(r, "anchor");
    rec.residual = r.contains("residual") && r.at("residual").is_null()
                       ? std::numeric_limits<double>::quiet_NaN()
                       : field<double>(r, "residual");
    rec.tol = field<double>(r, "tol");
    rec.pass = field<bool>(r, "pass");
    rec.message = field<std::string>(r, "message");
    out.records.push_back(std::move(rec));
  }
  if (j.contains("summary") && j.at("summary").contains("wall_time_s")) {
    out.wall_time = j.at("summary").at("wall_time_s").get<double>();
  }
  return out;
}

}  // namespace symp::suite
