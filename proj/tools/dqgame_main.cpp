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

#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "dqgame/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"dqgame: dynamic routing games on deterministic queuing networks"};
  app.set_version_flag("--version", dqgame::kToolVersion);
  app.require_subcommand(1);

  dqgame::CommandOptions opts;
  dqgame::Time horizon = 0;
  std::uint64_t seed = 0;
  int samples = 0;
  std::size_t guard = 0;
  int depth = 0;
  bool sampled = false;

  const std::map<std::string, std::string> about = {
      {"simulate", "play the scenario's path profile and write the trace"},
      {"solve", "compute the iterative dominating NE"},
      {"best-response", "earliest-arrival best response of one agent"},
      {"verify-ne", "check whether the scenario's profile is an NE"},
      {"enumerate-ne", "list every pure NE of a small game"},
      {"properties", "check the structural properties of an NE"},
      {"spe-audit", "one-deviation audit of a strategy profile"},
      {"queue-bound", "long-run occupancy under NE routing"},
      {"spe-bound", "long-run occupancy under sigma-star play"},
      {"fixtures", "rebuild and check the built-in example scenarios"}};

  for (const std::string& name : dqgame::command_names()) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    if (name == "fixtures") {
      sub->add_option("name", opts.scenario, "fixture to check (default: all)");
    } else {
      auto* pos = sub->add_option("scenario", opts.scenario, "scenario file or fixture name");
      if (name != "properties") pos->required();
    }
    sub->add_option("--out", opts.out_dir, "directory for report.txt and tsv files");
    sub->add_option("--horizon", horizon, "time horizon");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--samples", samples, "sample count for sampled checks");
    sub->add_option("--guard", guard, "enumeration guard");
    sub->add_option("--depth", depth, "audit depth");
    if (name == "simulate" || name == "verify-ne" || name == "properties" || name == "solve") {
      sub->add_option("--without-agent", opts.without_agents, "remove an agent before running");
    }
    if (name == "best-response") sub->add_option("--agent", opts.agent, "deviating agent")->required();
    if (name == "spe-audit") {
      sub->add_option("--oracle", opts.oracle, "sigma-star, ne-based, lowest-priority or vicious")
          ->check(CLI::IsMember({"sigma-star", "ne-based", "lowest-priority", "vicious"}));
    }
    if (name == "spe-audit" || name == "properties") {
      sub->add_flag("--sampled", sampled, "sample instead of exhaustive search");
    }
    if (name == "properties") sub->add_option("--replay", opts.replay, "witness scenario to replay");
    if (name == "queue-bound" || name == "spe-bound") {
      sub->add_option("--width", opts.width, "agents entering per step (default: minimum cut)");
    }
    sub->callback([&, sub, name] {
      opts.command = name;
      if (sub->count("--horizon")) opts.horizon = horizon;
      if (sub->count("--seed")) opts.seed = seed;
      if (sub->count("--samples")) opts.samples = samples;
      if (sub->count("--guard")) opts.guard = guard;
      if (sub->count("--depth")) opts.depth = depth;
      opts.exhaustive = !sampled;
    });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return dqgame::run_command(opts, std::cout);
  } catch (const dqgame::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
