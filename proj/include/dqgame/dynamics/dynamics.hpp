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

#ifndef DQGAME_DYNAMICS_DYNAMICS_HPP_
#define DQGAME_DYNAMICS_DYNAMICS_HPP_

#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "dqgame/common.hpp"
#include "dqgame/netcore/extended.hpp"
#include "dqgame/netcore/network.hpp"

namespace dqgame {

using Path = std::vector<EdgeId>;
// One path per agent; an empty path leaves the agent out of the routing.
using PathProfile = std::vector<Path>;

struct Action {
  enum class Kind { kStay, kExit, kMove };
  Kind kind = Kind::kStay;
  EdgeId edge;  // kMove only

  static Action stay() { return {}; }
  static Action exit() { return {Kind::kExit, EdgeId()}; }
  static Action move(EdgeId e) { return {Kind::kMove, e}; }
  friend bool operator==(const Action&, const Action&) = default;
};
using ActionProfile = std::vector<Action>;  // indexed by agent; ignored for absent agents

// Queue heads move: exit when their edge ends at d, otherwise any out-edge of
// the head vertex. Everyone else stays.
std::vector<Action> action_set(const Network& graph, const Configuration& c, AgentId a);

// One synchronous step. Leftover queues keep their order; entrants are
// appended sorted by the priority of the edge they came from.
Configuration step(const Network& graph, const Configuration& c, const ActionProfile& actions);

// Action prescribed by a path that starts at the agent's current edge.
Action action_along(const Network& graph, const Configuration& c, AgentId a, const Path& path);

// Remainder of `path` after applying `action`: the same path for stay, the
// path without its first edge for a move along it.
Path advance_path(const Path& path, const Action& action);

struct AgentTrace {
  Path path;
  std::vector<VertexId> vertices;  // tail of the first edge, then each head
  std::vector<Time> times;         // times[0] is the start time by convention

  bool routed() const { return !path.empty(); }
  Time exit_time() const { return times.empty() ? kNever : times.back(); }
  // Arrival time at v, kNever when v is not on the path.
  Time time_at(VertexId v) const;
  // Index of v in `vertices`, or -1.
  int index_of(VertexId v) const;
};

struct QueueSample {
  Time time;
  EdgeId edge;
  int length;
};

struct RoutingTrace {
  Time start = 0;
  std::vector<AgentTrace> agents;
  std::vector<QueueSample> queue_lengths;  // nonempty queues, when recorded

  const AgentTrace& operator[](AgentId a) const { return agents[a.idx()]; }
  Time exit_time(AgentId a) const { return agents[a.idx()].exit_time(); }
};

struct RunOptions {
  bool record_queues = false;
  Time horizon = 0;  // 0 selects r + |agents| * m + L
};

// Simulates until every routed agent exits. Agents with an empty path are
// removed from the configuration first.
RoutingTrace run_paths(const Network& graph, const Configuration& c, const PathProfile& profile,
                       const RunOptions& options = {});

Time default_horizon(const Network& graph, const Configuration& c);

// Every path from the head of `first` to d that starts with `first`.
std::vector<Path> enumerate_paths(const Network& graph, EdgeId first, std::size_t guard);
std::size_t count_paths(const Network& graph, EdgeId first);

// Uniform random walk from the head of `first` to d.
Path random_path(const Network& graph, EdgeId first, std::mt19937_64& rng);

// Checks that `path` starts at the agent's current edge and is a walk to d.
void check_path(const Network& graph, const Configuration& c, AgentId a, const Path& path);

// Original-network routing: agents follow original edges, picking the lane
// with the shortest queue (lowest lane index on ties) when they enter an
// edge. Returns each agent's exit time.
std::vector<Time> run_original_paths(const UnitNetwork& unit, const InflowSchedule& schedule,
                                     const std::vector<std::vector<EdgeId>>& original_paths);

// TSV exports.
void write_trace_tsv(std::ostream& out, const Instance& inst, const RoutingTrace& trace);
void write_queue_tsv(std::ostream& out, const Instance& inst, const RoutingTrace& trace);

}  // namespace dqgame

#endif  // DQGAME_DYNAMICS_DYNAMICS_HPP_
