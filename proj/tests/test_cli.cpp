#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

// Runs the installed binary with `args`, merging stderr into the capture.
RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CONSTFORGE_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string temp_file(const std::string& stem, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() /
              ("constforge_cli_" + stem);
  std::ofstream f(path);
  f << text;
  f.close();
  return path.string();
}

}  // namespace

TEST_CASE("eval prints the certified value") {
  RunResult r = run_cli("--digits 50 eval --A 2 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find(
            "A(2,1) = 3.8213722692848959953816494228382300826469572512504") !=
        std::string::npos);
  CHECK(r.output.find("certified_digits:") != std::string::npos);

  RunResult j = run_cli("--digits 30 --format json eval --A 2 1");
  CHECK(j.exit_code == 0);
  auto doc = nlohmann::json::parse(j.output);
  CHECK(doc["command"] == "eval");
  CHECK(doc["requested_digits"] == 30);
  CHECK(doc["value"] == "3.82137226928489599538164942284");
  CHECK(doc["certified_digits"].get<int>() >= 30);
}

TEST_CASE("verify runs the registry and reports per identity") {
  RunResult r = run_cli("--digits 30 verify --builtin");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("8 passed") != std::string::npos);

  RunResult j = run_cli("--digits 30 --format json verify --builtin");
  CHECK(j.exit_code == 0);
  auto doc = nlohmann::json::parse(j.output);
  CHECK(doc["passed"] == 8);
  CHECK(doc["failed"] == 0);
  REQUIRE(doc["reports"].size() == 8);
  // Reports come back sorted by name.
  std::vector<std::string> names;
  for (const auto& rep : doc["reports"]) {
    names.push_back(rep["name"].get<std::string>());
    CHECK(rep["pass"].get<bool>());
    CHECK(rep["matched_digits"].get<int>() >= 28);
  }
  std::vector<std::string> want = {"A21", "A31",         "A42",     "A53",
                                   "Ai1", "DblfactErf1", "CfErfc1",
                                   "Ramanujan1"};
  std::sort(want.begin(), want.end());
  CHECK(names == want);
}

TEST_CASE("deterministic output is byte-identical across runs") {
  const char* args = "--format json --deterministic --digits 30 verify --builtin";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("the digits default comes from the environment") {
  RunResult r = run_cli("eval --A 2 1");
  CHECK(r.output.find("3.82137226928489599538164942283823008264695725125") !=
        std::string::npos);

  std::string cmd = std::string("env CONSTFORGE_DIGITS=25 ") + CONSTFORGE_BIN +
                    " eval --A 2 1 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  pclose(pipe);
  CHECK(out.find("A(2,1) = 3.821372269284895995381649\n") != std::string::npos);
}

TEST_CASE("decode emits the recovered terms as csv") {
  RunResult r = run_cli("--digits 40 --format csv decode --A 2 1 --steps 5");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "step,index,s,r,step_times_r");
  std::vector<long> floors;
  while (std::getline(lines, line)) {
    auto first = line.find(',');
    auto second = line.find(',', first + 1);
    auto third = line.find(',', second + 1);
    floors.push_back(std::stol(line.substr(second + 1, third - second - 1)));
  }
  CHECK(floors == std::vector<long>{3, 5, 7, 9, 11});
}

TEST_CASE("exit codes distinguish usage, convergence, and mismatch") {
  // Invalid ramp parameters are a usage error.
  CHECK(run_cli("eval --A 0 1").exit_code == 2);
  // So is a malformed expression.
  CHECK(run_cli("eval --expr \"erf(\"").exit_code == 2);
  // A digit budget too small for the requested trace is a convergence error.
  RunResult conv = run_cli("--digits 50 decode --A 2 1 --steps 100");
  CHECK(conv.exit_code == 3);
  CHECK(conv.output.find("rerun with --digits") != std::string::npos);
  // A failing identity makes verify exit 1.
  std::string mf = temp_file("fail.mf",
                             "identity Wrong\n"
                             "kind real\n"
                             "lhs = 1\n"
                             "rhs = 2\n"
                             "end\n");
  RunResult bad = run_cli("--digits 20 verify " + mf);
  CHECK(bad.exit_code == 1);
  // Missing subcommand is a usage error; --help succeeds.
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("output lands in the requested file") {
  auto path = std::filesystem::temp_directory_path() / "constforge_cli_out.json";
  std::filesystem::remove(path);
  RunResult r = run_cli("--digits 25 --format json --output " + path.string() +
                        " eval --series 1");
  CHECK(r.exit_code == 0);
  std::ifstream f(path);
  REQUIRE(f.good());
  auto doc = nlohmann::json::parse(f);
  CHECK(doc["command"] == "eval");
  CHECK(doc["value"] == "1.410686134642447997690825");
}
