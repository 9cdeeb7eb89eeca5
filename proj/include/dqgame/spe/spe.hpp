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

#ifndef DQGAME_SPE_SPE_HPP_
#define DQGAME_SPE_SPE_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dqgame/equilibrium/equilibrium.hpp"

namespace dqgame {

// A node of the game tree: the configurations from the root to here.
struct HistoryNode {
  std::shared_ptr<const HistoryNode> parent;
  Configuration config;
  std::string key;  // configuration keys joined root first; unique per history
  int depth = 0;
};
using History = std::shared_ptr<const HistoryNode>;

History root_history(const Configuration& c);
History extend(const History& h, const Network& graph, const ActionProfile& actions);

// Behaviour strategy profile: the joint action at any history. Oracles may
// memoize; they are not thread-safe and audits run single-threaded.
class StrategyOracle {
 public:
  virtual ~StrategyOracle() = default;
  virtual ActionProfile actions(const History& h) = 0;
  virtual std::string name() const = 0;
};

// The actions a path profile prescribes at c: stay when queued behind
// someone, exit at the end of the path, otherwise the path's second edge.
ActionProfile actions_from_paths(const Network& graph, const Configuration& c,
                                 const PathProfile& paths);

// Markovian profile: at every configuration, play the dominating profile
// computed there. Memoized by configuration.
class SigmaStar : public StrategyOracle {
 public:
  explicit SigmaStar(const Network& graph) : graph_(graph) {}
  ActionProfile actions(const History& h) override { return actions_at(h->config); }
  ActionProfile actions_at(const Configuration& c);
  const PathProfile& profile_at(const Configuration& c);
  std::string name() const override { return "sigma-star"; }
  std::size_t memo_size() const { return profiles_.size(); }

 private:
  const Network& graph_;
  std::unordered_map<std::string, PathProfile> profiles_;
};

// History-dependent profile that plays a given NE on the path. After a
// deviation, the leading batches whose members all did as told keep their
// remaining paths; everyone else is re-planned with the dominating profile
// around those fixed paths.
class NeBasedSpe : public StrategyOracle {
 public:
  NeBasedSpe(const Network& graph, const Configuration& root, PathProfile ne);
  ActionProfile actions(const History& h) override;
  const PathProfile& profile_at(const History& h);
  std::string name() const override { return "ne-based"; }

 private:
  const Network& graph_;
  std::string root_key_;
  PathProfile root_profile_;
  std::unordered_map<std::string, PathProfile> profiles_;
};

// Chooses, at every decision, the out-edge with the lowest priority at its
// head (largest edge id on ties).
class LowestPriorityOracle : public StrategyOracle {
 public:
  explicit LowestPriorityOracle(const Network& graph) : graph_(graph) {}
  ActionProfile actions(const History& h) override;
  std::string name() const override { return "lowest-priority"; }

 private:
  const Network& graph_;
};

// Follows fixed paths; agents without a path defer to `fallback`.
class FixedPathOracle : public StrategyOracle {
 public:
  FixedPathOracle(const Network& graph, PathProfile paths, StrategyOracle* fallback);
  ActionProfile actions(const History& h) override;
  std::string name() const override { return "fixed-paths"; }

 private:
  const Network& graph_;
  PathProfile paths_;
  StrategyOracle* fallback_;
};

struct PlayResult {
  RoutingTrace trace;      // realized paths and times from the history's configuration
  std::vector<Time> exit;  // per agent, kNever for agents absent at the start
};

// Plays the oracle from h until everyone has left.
PlayResult play(const Network& graph, StrategyOracle& oracle, const History& h);
PathProfile induced_paths(const Network& graph, StrategyOracle& oracle, const History& h);

struct AuditOptions {
  bool exhaustive = true;
  int depth = -1;  // -1: exit time of the oracle's own play plus 2
  int samples = 200;
  std::uint64_t seed = 1;
  std::size_t max_nodes = 2000000;
};

struct AuditWitness {
  std::vector<std::string> history;  // configuration keys, root first
  AgentId agent;
  Action deviation;
  Time prescribed_exit = kNever;
  Time deviation_exit = kNever;
};

struct AuditResult {
  bool passed = true;
  bool truncated = false;  // hit max_nodes before finishing
  std::size_t nodes = 0;
  std::size_t deviations = 0;
  int depth = 0;
  std::optional<AuditWitness> witness;
};

// One-shot deviation check: at every visited history, no agent can exit
// earlier by changing only its current action and then following the oracle.
AuditResult one_deviation_audit(const Network& graph, const Configuration& root,
                                StrategyOracle& oracle, const AuditOptions& options = {});

// Trace-level properties of sigma-star play from an inflow start.
inline constexpr const char* kSequentialIndependence = "sequential_independence";
inline constexpr const char* kNoOvertaking = "no_overtaking";
inline constexpr const char* kEarliestArrival = "earliest_arrival";
inline constexpr const char* kMarkovAnonymity = "markov_anonymity";

PropertyReport check_sigma_star_properties(const Instance& inst, int samples, std::uint64_t seed);

}  // namespace dqgame

#endif  // DQGAME_SPE_SPE_HPP_
