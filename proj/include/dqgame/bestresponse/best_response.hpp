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

#ifndef DQGAME_BESTRESPONSE_BEST_RESPONSE_HPP_
#define DQGAME_BESTRESPONSE_BEST_RESPONSE_HPP_

#include <cstdint>
#include <vector>

#include "dqgame/common.hpp"
#include "dqgame/dynamics/dynamics.hpp"

namespace dqgame {

// Per edge and time: how many agents are queued, and which incoming edges
// delivered agents at that time. Built from fixed trajectories.
class QueueCounter {
 public:
  QueueCounter() = default;
  explicit QueueCounter(const Network& graph);

  // Records an agent that sits on path[k] from times[k] to times[k+1] - 1 and
  // entered path[k] (k >= 1) from path[k-1].
  void add(const Path& path, const std::vector<Time>& times);
  void add_trace(const RoutingTrace& trace);

  int occupancy(EdgeId e, Time t) const;
  // Agents that entered e at time t from an edge of rank >= min_rank, i.e.
  // from an edge whose priority is no higher than that rank.
  int entrants_no_higher(EdgeId e, Time t, int min_rank) const;

 private:
  struct Line {
    Time start = 0;
    std::vector<int> occ;
    std::vector<std::uint64_t> mask;
  };
  Line& line_for(EdgeId e, Time from, Time to);

  const Network* graph_ = nullptr;
  std::vector<Line> lines_;
};

struct ArrivalTable {
  Time start = 0;
  EdgeId first;
  std::vector<Time> tau;        // earliest arrival per vertex, kNever if unreachable
  std::vector<EdgeId> best_in;  // highest-priority edge attaining tau

  Time at(VertexId v) const { return tau[v.idx()]; }
  // The earliest-arrival path to v, traced back along best_in.
  Path path_to(const Network& graph, VertexId v) const;
};

// Earliest arrival of a newcomer standing at the end of `first` behind
// `ahead` counted agents, given the fixed agents recorded in `counter`.
// tau(v) = min over uv of tau(u) + 1 + |Q_uv(tau(u))| minus those entering uv at
// tau(u) from edges no higher in priority than best_in(u).
ArrivalTable earliest_arrival(const Network& graph, const QueueCounter& counter, EdgeId first,
                              Time start, int ahead);

// Table for agent zeta against the other agents' paths in `profile`
// (zeta's own entry is ignored; zeta is removed when counting queues).
ArrivalTable earliest_arrival_table(const Network& graph, const Configuration& c,
                                    const PathProfile& profile, AgentId zeta);

Path best_response_path(const Network& graph, const Configuration& c, const PathProfile& profile,
                        AgentId zeta);

struct BruteForceResult {
  Time best = kNever;
  std::vector<Path> optimal;  // every path attaining `best`
  std::size_t paths_tried = 0;
};

// Tries every path of zeta by full simulation.
BruteForceResult brute_force_best_response(const Network& graph, const Configuration& c,
                                           const PathProfile& profile, AgentId zeta,
                                           std::size_t guard = 100000);

// Whether zeta dominates j at v: over all deviations of zeta (others fixed),
// zeta's best arrival at v beats j's best, or ties and some path attaining it
// enters v by an edge at least as high in priority as j's. Zeta never
// reaches its own start vertex.
bool dominates(const Network& graph, const Configuration& c, const PathProfile& profile,
               AgentId zeta, AgentId j, VertexId v, std::size_t guard = 100000);

}  // namespace dqgame

#endif  // DQGAME_BESTRESPONSE_BEST_RESPONSE_HPP_
