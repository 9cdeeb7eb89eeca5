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

#ifndef DQGAME_CLI_COMMANDS_HPP_
#define DQGAME_CLI_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dqgame/cli/scenario.hpp"

namespace dqgame {

inline constexpr const char* kToolVersion = "0.1.0";

struct CommandOptions {
  std::string command;
  std::string scenario;  // file path or fixture name
  std::string out_dir;   // empty: report to stdout only
  // Unset values fall back to the scenario's params, then to defaults.
  std::optional<Time> horizon;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<std::size_t> guard;
  std::optional<int> depth;
  std::vector<std::string> without_agents;
  std::string agent;              // best-response
  std::string oracle = "sigma-star";  // spe-audit: sigma-star, ne-based, lowest-priority, vicious
  bool exhaustive = true;         // spe-audit, properties
  std::string replay;             // properties --replay
  int width = 0;                  // queue-bound / spe-bound inflow width, 0 = cut size
};

std::vector<std::string> command_names();

// Loads a fixture name or a scenario file.
Scenario resolve_scenario(const std::string& ref);

// Runs one command, writing report.txt (and tsv files) under out_dir and a
// copy of the report to `log`. Returns 0 when the command's verdict passes.
int run_command(const CommandOptions& options, std::ostream& log);

}  // namespace dqgame

#endif  // DQGAME_CLI_COMMANDS_HPP_
