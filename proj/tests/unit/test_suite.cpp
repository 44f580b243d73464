#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "symp/suite/suite.hpp"

using namespace symp::suite;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run sympair(const std::string& args) {
  const std::string cmd = std::string(SYMPAIR_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/sympair_test_" + name;
  std::ofstream(path) << body;
  return path;
}

const std::string kConfigs = std::string(SYMPAIR_SOURCE_DIR) + "/configs/";

Record record(const std::string& check, double residual, double tol) {
  return {"s", check, "Eq (1.1)", residual, tol, residual <= tol, ""};
}

}  // namespace

TEST_CASE("empty suite list") {
  const auto rep = run_suite(parse_config(json::parse(R"({"suites":[]})")));
  CHECK(rep.total() == 0);
  CHECK(rep.exit_code() == 0);
  CHECK(to_json(rep) == "{\"records\":[],\"summary\":{\"failed\":0,\"passed\":0,\"total\":0}}\n");
}

TEST_CASE("config validation") {
  auto bad = [](const char* text) { return parse_config(json::parse(text)); };
  CHECK_THROWS_AS(bad(R"({})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"suites":[{"kind":"bogus"}]})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"suites":[{"kind":"malliavin","params":{"d":2}}]})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"suites":[{"kind":"malliavin","params":{"d":2,"N":"6"}}]})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"suites":[{"kind":"malliavin","params":{"d":2,"N":6,"k":[1]}}]})"),
                  ConfigError);
  CHECK_THROWS_AS(bad(R"({"suites":[{"kind":"defect","params":{"nmax":2}}]})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"suites":[{"kind":"pair","params":{"builtin":"hermite","N":3},"tol":-1}]})"),
                  ConfigError);
  CHECK_THROWS_AS(bad(R"({"suites":[{"kind":"pair","params":{"builtin":"hermite","N":3},"extra":1}]})"),
                  ConfigError);
  CHECK_THROWS_AS(bad(R"({"suites":[{"kind":"network","params":{"builtin":"star"}}]})"), ConfigError);
  CHECK_THROWS_AS(bad(R"({"suites":[{"kind":"modular","params":{"n":2,"rho":[[1,0]]}}]})"),
                  ConfigError);
  CHECK_NOTHROW(bad(R"({"suites":[{"kind":"modular","params":{"n":2,"rho":"tracial"}}]})"));
}

TEST_CASE("tol = 0 fails residual checks") {
  const auto cfg = parse_config(json::parse(
      R"({"suites":[{"kind":"modular","params":{"n":2,"rho":"random","seed":5},"tol":0}]})"));
  const auto rep = run_suite(cfg);
  CHECK(rep.failed() > 0);
  CHECK(rep.exit_code() == 1);
}

TEST_CASE("math-domain errors become failed records") {
  // A rho that is not positive definite is a math failure, not a config error.
  const auto cfg = parse_config(json::parse(
      R"({"suites":[{"kind":"modular","params":{"n":2,"rho":{"diag":[1.0,0.0]}}}]})"));
  const auto rep = run_suite(cfg);
  REQUIRE(rep.total() == 1);
  CHECK_FALSE(rep.records[0].pass);
  CHECK(std::isnan(rep.records[0].residual));
  CHECK(rep.records[0].message.rfind("error:", 0) == 0);
  CHECK(to_json(rep).find("\"residual\":null") != std::string::npos);
}

TEST_CASE("pass agrees with residual <= tol on every record") {
  const auto rep = run_suite(parse_config_file(kConfigs + "default_suite.json"));
  CHECK(rep.total() > 100);
  for (const auto& r : rep.records) {
    CAPTURE(r.check);
    CHECK(r.pass == (std::isfinite(r.residual) && r.residual <= r.tol));
    CHECK_FALSE(r.anchor.empty());
  }
  CHECK(rep.exit_code() == 0);
}

TEST_CASE("emit formats") {
  Report rep;
  rep.records.push_back(record("bad", 0.5, 0.1));
  CHECK(to_csv(rep) == "suite,check,anchor,residual,tol,pass\n"
                       "s,bad,Eq (1.1),5.000000000000e-01,1.000000000000e-01,false\n");
  rep.records[0].suite = "a,b";
  CHECK(to_csv(rep).find("\"a,b\"") != std::string::npos);

  const std::string human = to_human(rep);
  CHECK(human.find("FAIL") != std::string::npos);
  CHECK(human.find("0/1 checks passed") != std::string::npos);
  CHECK_THROWS_AS(format_from_string("xml"), ConfigError);
}

TEST_CASE("json is canonical and round-trips") {
  Report rep;
  rep.records.push_back(record("one", 1.0 / 3.0, 1e-10));
  rep.records.push_back(record("two", 0.0, 0.0));
  rep.records.back().message = "quote \" and comma ,";
  const std::string text = to_json(rep);
  CHECK(text.find("3.333333333333e-01") != std::string::npos);
  // Keys sorted: anchor < check < message < pass < residual < suite < tol.
  CHECK(text.find("\"anchor\"") < text.find("\"check\""));
  CHECK(text.find("\"suite\"") < text.find("\"tol\""));

  const Report back = report_from_json(text);
  REQUIRE(back.total() == 2);
  CHECK(back.records[1] == rep.records[1]);
  CHECK(std::abs(back.records[0].residual - 1.0 / 3.0) < 1e-12);
  CHECK(to_json(back) == text);

  rep.wall_time = 1.5;
  CHECK(report_from_json(to_json(rep)).wall_time == 1.5);
  CHECK_THROWS_AS(report_from_json("{"), ConfigError);
}

TEST_CASE("SYMPAIR_TOL sets the default tolerance") {
  setenv("SYMPAIR_TOL", "1e-3", 1);
  CHECK(default_tolerance() == 1e-3);
  const auto cfg = parse_config(json::parse(R"({"suites":[{"kind":"defect"}]})"));
  CHECK(cfg.suites[0].tol == 1e-3);
  setenv("SYMPAIR_TOL", "abc", 1);
  CHECK_THROWS_AS(default_tolerance(), ConfigError);
  unsetenv("SYMPAIR_TOL");
  CHECK(default_tolerance() == 1e-10);
}

TEST_CASE("cli exit codes") {
  CHECK(sympair("run -c " + kConfigs + "default_suite.json").code == 0);
  CHECK(sympair("check defect --rule geometric --r 2 --nmax 80").code == 0);
  CHECK(sympair("check defect --rule constant --expect CONVERGES").code == 1);
  CHECK(sympair("check malliavin --d 2 --N 6").code == 0);
  CHECK(sympair("check modular --rho " + kConfigs + "rho_07_03.json --t 0.5,1,3.14159").code == 0);
  CHECK(sympair("check network -g " + kConfigs + "graphs/c4.txt").code == 0);
  CHECK(sympair("check pair -i " + kConfigs + "pair_hermite2.json --tol 0").code == 0);
  CHECK(sympair("check malliavin --d 2 --N 6 --tol 0").code == 1);

  CHECK(sympair("").code == 2);
  CHECK(sympair("frobnicate").code == 2);
  CHECK(sympair("run").code == 2);
  CHECK(sympair("run -c /nonexistent.json").code == 2);
  CHECK(sympair("run -c " + kConfigs + "default_suite.json --format xml").code == 2);
  CHECK(sympair("check network -g /nonexistent.txt").code == 2);
  // A readable but disconnected graph is a failed check, not a usage error.
  const auto split = temp_file("split.txt", "origin a\na b 1\nc d 1\n");
  CHECK(sympair("check network -g " + split).code == 1);
  CHECK(sympair("check defect --rule wobbly").code == 2);
  CHECK(sympair("check malliavin --d 2 --N 6 --tol -1").code == 2);
  CHECK(sympair("check malliavin --d 2 --N 6 --k 1,x").code == 2);

  const auto bad_cfg = temp_file("bad.json", R"({"suites":[{"kind":"pair","params":{}}]})");
  CHECK(sympair("run -c " + bad_cfg).code == 2);
  const auto empty = temp_file("empty.json", R"({"suites":[]})");
  const auto r = sympair("run -c " + empty);
  CHECK(r.code == 0);
  CHECK(r.out == "{\"records\":[],\"summary\":{\"failed\":0,\"passed\":0,\"total\":0}}\n");
}

TEST_CASE("cli output is deterministic and parses back") {
  const std::string args = "run -c " + kConfigs + "default_suite.json --format json";
  const auto a = sympair(args);
  const auto b = sympair(args);
  CHECK(a.out == b.out);
  const Report rep = report_from_json(a.out);
  CHECK(rep.failed() == 0);
  CHECK(to_json(rep) == a.out);

  const auto csv = sympair("check defect --rule constant --expect CONVERGES --format csv");
  CHECK(csv.out.rfind("suite,check,anchor,residual,tol,pass\n", 0) == 0);
  CHECK(csv.out.find(",false\n") != std::string::npos);

  const auto out_path = std::string("/tmp/sympair_test_report.json");
  std::remove(out_path.c_str());
  CHECK(sympair("check defect -o " + out_path + " --format json --timing").code == 0);
  std::ifstream in(out_path);
  const std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(report_from_json(written).wall_time.has_value());
}
