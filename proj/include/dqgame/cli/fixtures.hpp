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

#ifndef DQGAME_CLI_FIXTURES_HPP_
#define DQGAME_CLI_FIXTURES_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dqgame/cli/scenario.hpp"
#include "dqgame/spe/spe.hpp"

namespace dqgame {

// Built-in scenarios reconstructed from the three worked examples:
//   fig1  two agents, one SPE whose induced paths are not an NE
//   fig2  nine agents on the rock-paper-scissors gadget with edge priorities
//   fig3  ten agents where removing one agent delays another
std::vector<std::string> fixture_names();
std::optional<Scenario> fixture(const std::string& name);

// fig1: agent p1 blocks p2 depending on p2's first edge; p2 always heads for
// u1. Anything not covered follows sigma-star.
class ViciousOracle : public StrategyOracle {
 public:
  explicit ViciousOracle(const Instance& inst);
  ActionProfile actions(const History& h) override;
  std::string name() const override { return "vicious"; }

 private:
  const Instance& inst_;
  SigmaStar sigma_;
  AgentId p1_, p2_;
  EdgeId ov_, ou1_, vw1_, vw2_;
};

}  // namespace dqgame

#endif  // DQGAME_CLI_FIXTURES_HPP_
