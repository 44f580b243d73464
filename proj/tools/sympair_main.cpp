// sympair: run residual checks for symmetric pairs and print a report.
#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "symp/suite/suite.hpp"

using symp::suite::ConfigError;
using symp::suite::Kind;
using symp::suite::SuiteConfig;
using symp::suite::SuiteEntry;
using nlohmann::json;

namespace {

struct Output {
  std::string format;  // empty: the subcommand's default
  std::string path;
  bool timing = false;
  std::optional<double> tol;
};

void add_output_options(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "json, csv or human (default: json for run, human for check)");
  cmd->add_option("-o,--output", out.path, "write the report here instead of stdout");
  cmd->add_flag("--timing", out.timing, "include wall time in the summary");
  cmd->add_option("--tol", out.tol, "tolerance for residual checks");
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

int report(const SuiteConfig& config, const Output& out) {
  const auto format = symp::suite::format_from_string(out.format);
  const auto start = std::chrono::steady_clock::now();
  auto rep = symp::suite::run_suite(config);
  if (out.timing) {
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  const std::string text = symp::suite::emit(rep, format);
  if (out.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out.path);
    if (!f) throw ConfigError("cannot write '" + out.path + "'");
    f << text;
  }
  return rep.exit_code();
}

// One-entry config through the same validation as `run`.
SuiteConfig single(Kind kind, json params, std::optional<double> tol, const std::string& base = "") {
  json entry = {{"kind", symp::suite::to_string(kind)}, {"params", std::move(params)}};
  if (tol) entry["tol"] = *tol;
  return symp::suite::parse_config({{"suites", json::array({entry})}}, base);
}

json split_numbers(const std::string& list) {
  json out = json::array();
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    const std::string item = list.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("'" + item + "' is not a number");
    }
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual checks for symmetric pairs of operators"};
  app.require_subcommand(1);

  Output out;
  std::function<SuiteConfig()> build;

  auto* run = app.add_subcommand("run", "run a suite config");
  std::string config_path;
  run->add_option("-c,--config", config_path, "suite config JSON")->required();
  add_output_options(run, out);
  run->callback([&] { build = [&] { return symp::suite::parse_config_file(config_path); }; });

  auto* check = app.add_subcommand("check", "run one suite from command-line options");
  check->require_subcommand(1);

  auto* pair = check->add_subcommand("pair", "pair given as {\"A\":...,\"B\":...}");
  std::string pair_path;
  pair->add_option("-i,--input", pair_path, "pair JSON")->required();
  add_output_options(pair, out);
  pair->callback([&] {
    build = [&] {
      json doc = read_json(pair_path);
      std::optional<double> tol = out.tol;
      if (!tol && doc.is_object() && doc.contains("tol")) {
        if (!doc.at("tol").is_number()) throw ConfigError("pair: 'tol' must be a number");
        tol = doc.at("tol").get<double>();
      }
      if (doc.is_object()) doc.erase("tol");
      return single(Kind::Pair, doc, tol);
    };
  });

  auto* mall = check->add_subcommand("malliavin", "truncated chaos checks");
  int d = 2, n = 6;
  std::string k;
  bool exp_checks = false;
  mall->add_option("--d", d, "number of Gaussian variables")->capture_default_str();
  mall->add_option("--N", n, "maximal chaos degree")->capture_default_str();
  mall->add_option("--k", k, "direction k, comma separated");
  mall->add_flag("--exp", exp_checks, "also run the exponential-vector checks");
  add_output_options(mall, out);
  mall->callback([&] {
    build = [&] {
      json p = {{"d", d}, {"N", n}};
      if (!k.empty()) p["k"] = split_numbers(k);
      if (exp_checks) p["exp"] = true;
      return single(Kind::Malliavin, p, out.tol);
    };
  });

  auto* mod = check->add_subcommand("modular", "standard form of a density matrix");
  std::string rho = "tracial", t_list;
  int mod_n = 2;
  long seed = 1;
  mod->add_option("--rho", rho, "JSON file, 'tracial' or 'random'")->capture_default_str();
  mod->add_option("--n", mod_n, "matrix size for 'tracial' and 'random'")->capture_default_str();
  mod->add_option("--seed", seed, "seed for 'random'")->capture_default_str();
  mod->add_option("--t", t_list, "flow times, comma separated");
  add_output_options(mod, out);
  mod->callback([&] {
    build = [&] {
      json p;
      std::optional<double> tol = out.tol;
      if (rho == "tracial" || rho == "random") {
        p = {{"n", mod_n}, {"rho", rho}};
        if (rho == "random") p["seed"] = seed;
      } else {
        // {"n":n,"rho":[[re,im],...] | "tracial","t_list":[...],"tol":t}
        p = read_json(rho);
        if (!p.is_object()) throw ConfigError("modular: rho file must hold a JSON object");
        if (!tol && p.contains("tol") && p.at("tol").is_number()) tol = p.at("tol").get<double>();
        p.erase("tol");
      }
      if (!t_list.empty()) p["t_list"] = split_numbers(t_list);
      return single(Kind::Modular, p, tol);
    };
  });

  auto* net = check->add_subcommand("network", "finite resistance network");
  std::string graph;
  net->add_option("-g,--graph", graph, "edge list: 'x y c' lines and 'origin o'")->required();
  add_output_options(net, out);
  net->callback([&] { build = [&] { return single(Kind::Network, {{"file", graph}}, out.tol); }; });

  auto* def = check->add_subcommand("defect", "defect recurrence on the half-line");
  std::string rule = "geometric", expect;
  double r = 2.0, psi0 = 1.0;
  int nmax = 80;
  def->add_option("--rule", rule, "geometric or constant")->capture_default_str();
  def->add_option("--r", r, "ratio of the geometric rule")->capture_default_str();
  def->add_option("--nmax", nmax, "last node")->capture_default_str();
  def->add_option("--psi0", psi0, "value at the origin")->capture_default_str();
  def->add_option("--expect", expect, "CONVERGES, DIVERGES or INCONCLUSIVE");
  add_output_options(def, out);
  def->callback([&] {
    build = [&] {
      json p = {{"kind", "halfline"}, {"rule", rule}, {"r", r}, {"nmax", nmax}, {"psi0", psi0}};
      if (!expect.empty()) p["expect"] = expect;
      return single(Kind::Defect, p, out.tol);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (out.format.empty()) out.format = run->parsed() ? "json" : "human";
    if (out.tol && !(*out.tol >= 0.0)) throw ConfigError("--tol must be non-negative");
    symp::suite::format_from_string(out.format);
    return report(build(), out);
  } catch (const ConfigError& e) {
    std::cerr << "sympair: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "sympair: " << e.what() << '\n';
    return 2;
  }
}
