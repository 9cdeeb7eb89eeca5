// Copyright 2026 The dqgame Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"
#include "dqgame/cli/commands.hpp"

namespace dqgame {
namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dqgame_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string sub(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

CommandOptions command(const std::string& cmd, const std::string& scenario, const std::string& out) {
  CommandOptions o;
  o.command = cmd;
  o.scenario = scenario;
  o.out_dir = out;
  return o;
}

TEST_CASE("enumerate-ne on fig1") {
  TempDir tmp;
  std::ostringstream log;
  CHECK(run_command(command("enumerate-ne", "fig1", tmp.sub("a")), log) == 0);
  const std::string report = slurp(tmp.sub("a/report.txt"));
  CHECK(report == log.str());
  CHECK(report.find("nash_equilibria: 6\n") != std::string::npos);
  CHECK(report.find("status: pass\n") != std::string::npos);
  const std::string ne = slurp(tmp.sub("a/ne.tsv"));
  CHECK(ne.rfind("ne\tagent\tpath\texit\tcost\n", 0) == 0);
  CHECK(std::count(ne.begin(), ne.end(), '\n') == 13);
}

TEST_CASE("solve on fig2 writes a replayable solution") {
  TempDir tmp;
  std::ostringstream log;
  CHECK(run_command(command("solve", "fig2", tmp.sub("s")), log) == 0);
  REQUIRE(fs::exists(tmp.sub("s/solution.yaml")));
  CHECK(fs::exists(tmp.sub("s/trace.tsv")));
  CommandOptions verify = command("verify-ne", tmp.sub("s/solution.yaml"), "");
  std::ostringstream vlog;
  CHECK(run_command(verify, vlog) == 0);
  CommandOptions replay = command("properties", "", "");
  replay.replay = tmp.sub("s/solution.yaml");
  std::ostringstream plog;
  CHECK(run_command(replay, plog) == 0);
  CHECK(plog.str().find("strong_ne: holds") != std::string::npos);
}

TEST_CASE("simulate fig3 without k") {
  TempDir tmp;
  std::ostringstream log;
  CommandOptions o = command("simulate", "fig3", tmp.sub("b"));
  o.without_agents = {"k"};
  CHECK(run_command(o, log) == 0);
  CHECK(log.str().find("without_agent: k\n") != std::string::npos);
  CHECK(log.str().find("  j: v1v2 v2v3 v3v4 v4v5 v5d | exit 6 cost 6\n") != std::string::npos);
  CHECK(fs::exists(tmp.sub("b/queues.tsv")));
  const std::string trace = slurp(tmp.sub("b/trace.tsv"));
  CHECK(trace.find("\tk\t") == std::string::npos);
}

TEST_CASE("verdicts and determinism") {
  TempDir tmp;
  std::ostringstream a, b;
  CommandOptions o = command("spe-audit", "fig1", "");
  o.oracle = "lowest-priority";
  CHECK(run_command(o, a) == 1);
  CHECK(run_command(o, b) == 1);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("verdict: fail\n") != std::string::npos);

  std::ostringstream v;
  CHECK(run_command(command("verify-ne", "fig1", ""), v) == 1);

  std::ostringstream q;
  CommandOptions qb = command("queue-bound", std::string(DQGAME_SOURCE_DIR) + "/scenarios/diamond.yaml", tmp.sub("q"));
  qb.horizon = 300;
  CHECK(run_command(qb, q) == 0);
  CHECK(fs::exists(tmp.sub("q/occupancy.tsv")));
  CHECK(fs::exists(tmp.sub("q/latency.tsv")));
}

TEST_CASE("fixtures command") {
  TempDir tmp;
  std::ostringstream log;
  CHECK(run_command(command("fixtures", "", tmp.sub("f")), log) == 0);
  for (const char* n : {"fig1", "fig2", "fig3"}) {
    CHECK(slurp(tmp.sub(std::string("f/") + n + ".yaml")) ==
          slurp(std::string(DQGAME_SOURCE_DIR) + "/scenarios/" + n + ".yaml"));
  }
  CHECK(log.str().find("FAIL") == std::string::npos);
}

TEST_CASE("errors") {
  std::ostringstream log;
  CHECK_THROWS_AS(run_command(command("nope", "fig1", ""), log), Error);
  CHECK_THROWS_AS(run_command(command("solve", "/nonexistent.yaml", ""), log), ParseError);
  CommandOptions o = command("simulate", "fig3", "");
  o.without_agents = {"zz"};
  CHECK_THROWS_AS(run_command(o, log), Error);
}

TEST_CASE("binary exit codes") {
  const std::string bin = DQGAME_BINARY;
  auto rc = [&](const std::string& args) {
    const int status = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  CHECK(rc("enumerate-ne fig1") == 0);
  CHECK(rc("verify-ne fig1") == 1);
  CHECK(rc("solve /nonexistent.yaml") == 2);
  CHECK(rc("solve") == 2);
  CHECK(rc("--version") == 0);
}

}  // namespace
}  // namespace dqgame
