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

#ifndef DQGAME_NETCORE_EXTENDED_HPP_
#define DQGAME_NETCORE_EXTENDED_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dqgame/common.hpp"
#include "dqgame/netcore/network.hpp"

namespace dqgame {

// Where a unit edge came from: lane `lane` of original edge `original`,
// position `segment` along that lane (0 leaves the original tail).
struct UnitProvenance {
  EdgeId original;
  int lane = 0;
  int segment = 0;
};

struct UnitNetwork {
  Network original;
  Network net;
  std::vector<UnitProvenance> provenance;            // per unit edge
  std::vector<std::vector<std::vector<EdgeId>>> lanes; // original edge -> lane -> segments
};

// Replaces an edge of capacity c and transit t by c parallel chains of t unit
// edges. At the original head, the lanes of e take e's slot in the priority
// order as a block, lane 0 first. Original vertices keep their ids.
UnitNetwork normalize_to_unit(const Network& net);

struct InflowBatch {
  Time time = 0;
  std::vector<std::string> agents;  // in original priority order
};
using InflowSchedule = std::vector<InflowBatch>;

struct AgentInfo {
  std::string name;
  Time entry_time = -1;  // time the agent reaches o; -1 for explicit configurations
  int slot = -1;         // index inside its inflow batch
};

// Queues on every edge at one time step. Position 0 is the head.
class Configuration {
 public:
  struct Location {
    EdgeId edge;
    int position = 0;
  };

  Configuration() = default;
  Configuration(Time time, std::size_t num_edges, std::size_t num_agents);

  Time time() const { return time_; }
  std::size_t num_edges() const { return queues_.size(); }
  std::size_t num_agents() const { return where_.size(); }

  const std::vector<AgentId>& queue(EdgeId e) const { return queues_[e.idx()]; }
  void push_back(EdgeId e, AgentId a);

  bool present(AgentId a) const { return where_[a.idx()].has_value(); }
  const std::optional<Location>& locate(AgentId a) const { return where_[a.idx()]; }
  std::vector<AgentId> present_agents() const;
  std::size_t num_present() const { return present_count_; }

  // Queues with every agent outside `keep` removed, order preserved.
  Configuration restricted(const std::vector<bool>& keep) const;

  // Canonical text key. Equal keys mean equal configurations.
  std::string key() const;

 private:
  Time time_ = 0;
  std::vector<std::vector<AgentId>> queues_;
  std::vector<std::optional<Location>> where_;
  std::size_t present_count_ = 0;
};

// The network with one chain per inflow slot prepended to o. Edges and
// vertices of the unit network keep their ids; chain elements follow.
class ExtendedNetwork {
 public:
  ExtendedNetwork() = default;
  ExtendedNetwork(const UnitNetwork& unit, int slots, Time max_entry);

  const Network& graph() const { return graph_; }
  const UnitNetwork& unit() const { return unit_; }
  std::size_t num_g_edges() const { return g_edges_; }
  bool is_g_edge(EdgeId e) const { return e.idx() < g_edges_; }
  bool is_g_vertex(VertexId v) const { return v.idx() < g_vertices_; }
  VertexId g_origin() const { return unit_.net.origin(); }
  int slots() const { return slots_; }
  Time max_entry() const { return max_entry_; }
  // Edge o^f_r o^f_{r-1} of chain f (r >= 1).
  EdgeId chain_edge(int slot, Time r) const;

 private:
  UnitNetwork unit_;
  Network graph_;
  std::size_t g_edges_ = 0;
  std::size_t g_vertices_ = 0;
  int slots_ = 0;
  Time max_entry_ = 0;
  std::vector<std::vector<EdgeId>> chains_;  // [slot][r-1]
};

// A game state: the network, who the agents are, and where they stand.
struct Instance {
  ExtendedNetwork net;
  std::vector<AgentInfo> agents;
  Configuration initial;
  // True when the configuration is the start of an inflow schedule, which
  // is when original priorities are defined.
  bool from_inflow = false;

  std::size_t num_agents() const { return agents.size(); }
  std::optional<AgentId> find_agent(const std::string& name) const;
  const std::string& agent_name(AgentId a) const { return agents[a.idx()].name; }
  // Original priority order: entry time, then slot. Smaller is higher.
  bool higher_original_priority(AgentId a, AgentId b) const;
};

// Agent k of batch Delta_r starts at the head of chain edge o^k_r o^k_{r-1},
// so it reaches o exactly at time r; chain edges enter o ordered by slot.
Instance build_extended(const UnitNetwork& unit, const InflowSchedule& schedule);

// Explicit starting queues on unit edges, listed head first.
struct QueueSpec {
  std::string edge;
  std::vector<std::string> agents;
};
Instance build_configured(const UnitNetwork& unit, Time time,
                          const std::vector<QueueSpec>& queues);

}  // namespace dqgame

#endif  // DQGAME_NETCORE_EXTENDED_HPP_
