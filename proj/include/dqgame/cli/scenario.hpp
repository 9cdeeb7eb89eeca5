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

#ifndef DQGAME_CLI_SCENARIO_HPP_
#define DQGAME_CLI_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dqgame/dynamics/dynamics.hpp"
#include "dqgame/netcore/extended.hpp"
#include "dqgame/netcore/network.hpp"

namespace dqgame {

// A scenario-file error with its 1-based source line (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, int line, const std::string& message);
  ParseError(int line, const std::string& message)
      : ParseError(ErrorCode::kParseError, line, message) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ScenarioParams {
  Time horizon = 0;  // 0: command default
  std::uint64_t seed = 1;
  int samples = 50;
  std::size_t guard = 1000000;
  int depth = -1;

  friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

struct ConfigurationSpec {
  Time time = 0;
  std::vector<QueueSpec> queues;  // agents listed head first
};

struct Scenario {
  std::string name;
  NetworkSpec network;
  InflowSchedule inflow;
  std::optional<ConfigurationSpec> configuration;
  // Agent name -> edge names. For inflow agents the chain up to o may be
  // omitted; it is filled in.
  std::vector<std::pair<std::string, std::vector<std::string>>> profile;
  ScenarioParams params;
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& scenario);
// FNV-1a of the serialized form.
std::uint64_t scenario_hash(const Scenario& scenario);

struct LoadedScenario {
  Scenario scenario;
  Instance instance;
  PathProfile profile;  // empty paths for agents the scenario leaves open
  bool has_profile = false;

  const Network& graph() const { return instance.net.graph(); }
};

LoadedScenario instantiate(const Scenario& scenario);

// Resolves agent-name path lists against a loaded instance, prepending the
// inflow chain where it was left out. Names are unit edges ("e/lane/seg" for
// split edges) or original edges, a split edge standing for its lane 0.
PathProfile resolve_profile(
    const Instance& inst,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& paths);

// Edge names of a path, chain edges dropped unless `with_chain`.
std::string path_to_string(const Instance& inst, const Path& path, bool with_chain = false);

// The reverse of resolve_profile, for writing profiles back into scenarios.
std::vector<std::pair<std::string, std::vector<std::string>>> profile_to_names(
    const Instance& inst, const PathProfile& profile);

}  // namespace dqgame

#endif  // DQGAME_CLI_SCENARIO_HPP_
