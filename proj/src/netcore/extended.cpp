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

#include "dqgame/netcore/extended.hpp"

#include <algorithm>
#include <set>

namespace dqgame {

UnitNetwork normalize_to_unit(const Network& net) {
  UnitNetwork out;
  out.original = net;
  std::vector<std::string> names;
  for (std::size_t v = 0; v < net.num_vertices(); ++v) names.push_back(net.vertex_name(VertexId(v)));
  std::vector<Edge> edges;
  out.lanes.resize(net.num_edges());
  for (std::size_t i = 0; i < net.num_edges(); ++i) {
    const Edge& e = net.edge(EdgeId(i));
    const bool unit = e.capacity == 1 && e.transit == 1;
    for (int lane = 0; lane < e.capacity; ++lane) {
      VertexId prev = e.tail;
      std::vector<EdgeId> lane_edges;
      for (int seg = 0; seg < e.transit; ++seg) {
        VertexId next = e.head;
        if (seg + 1 < e.transit) {
          next = VertexId(names.size());
          names.push_back(e.name + "/" + std::to_string(lane) + "/" + std::to_string(seg + 1));
        }
        std::string name = unit ? e.name
                                : e.name + "/" + std::to_string(lane) + "/" + std::to_string(seg);
        lane_edges.push_back(EdgeId(edges.size()));
        edges.push_back({name, prev, next, 1, 1});
        out.provenance.push_back({EdgeId(i), lane, seg});
        prev = next;
      }
      out.lanes[i].push_back(std::move(lane_edges));
    }
  }
  std::vector<std::vector<EdgeId>> priority(names.size());
  for (std::size_t v = 0; v < net.num_vertices(); ++v) {
    for (EdgeId e : net.in_edges(VertexId(v))) {
      for (const auto& lane : out.lanes[e.idx()]) priority[v].push_back(lane.back());
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].head.idx() >= net.num_vertices()) priority[edges[i].head.idx()] = {EdgeId(i)};
  }
  out.net = Network(std::move(names), std::move(edges), net.origin(), net.destination(),
                    std::move(priority));
  return out;
}

Configuration::Configuration(Time time, std::size_t num_edges, std::size_t num_agents)
    : time_(time), queues_(num_edges), where_(num_agents) {}

void Configuration::push_back(EdgeId e, AgentId a) {
  if (where_[a.idx()]) {
    throw Error(ErrorCode::kInternal, "agent placed twice in a configuration");
  }
  where_[a.idx()] = Location{e, static_cast<int>(queues_[e.idx()].size())};
  queues_[e.idx()].push_back(a);
  ++present_count_;
}

std::vector<AgentId> Configuration::present_agents() const {
  std::vector<AgentId> out;
  for (std::size_t a = 0; a < where_.size(); ++a) {
    if (where_[a]) out.push_back(AgentId(a));
  }
  return out;
}

Configuration Configuration::restricted(const std::vector<bool>& keep) const {
  Configuration out(time_, queues_.size(), where_.size());
  for (std::size_t e = 0; e < queues_.size(); ++e) {
    for (AgentId a : queues_[e]) {
      if (keep[a.idx()]) out.push_back(EdgeId(e), a);
    }
  }
  return out;
}

std::string Configuration::key() const {
  std::string k = std::to_string(time_);
  for (std::size_t e = 0; e < queues_.size(); ++e) {
    if (queues_[e].empty()) continue;
    k += ';';
    k += std::to_string(e);
    k += ':';
    for (std::size_t i = 0; i < queues_[e].size(); ++i) {
      if (i) k += ',';
      k += std::to_string(queues_[e][i].value());
    }
  }
  return k;
}

ExtendedNetwork::ExtendedNetwork(const UnitNetwork& unit, int slots, Time max_entry)
    : unit_(unit), slots_(slots), max_entry_(max_entry) {
  const Network& g = unit.net;
  g_edges_ = g.num_edges();
  g_vertices_ = g.num_vertices();
  if (slots == 0) {
    graph_ = g;
    return;
  }
  std::vector<std::string> names;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) names.push_back(g.vertex_name(VertexId(v)));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < g.num_edges(); ++i) edges.push_back(g.edge(EdgeId(i)));
  std::vector<std::vector<EdgeId>> priority(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    auto in = g.in_edges(VertexId(v));
    priority[v].assign(in.begin(), in.end());
  }
  const VertexId top(names.size());
  names.push_back("~o");
  priority.emplace_back();
  chains_.assign(slots, {});
  for (int f = 0; f < slots; ++f) {
    // Vertex o^f_r for r = 1..max_entry; o^f_0 is o and o^f_{max_entry+1} is the shared top.
    std::vector<VertexId> chain_vertex(max_entry + 2);
    chain_vertex[0] = g.origin();
    chain_vertex[max_entry + 1] = top;
    for (Time r = 1; r <= max_entry; ++r) {
      chain_vertex[r] = VertexId(names.size());
      names.push_back("~o" + std::to_string(f) + "_" + std::to_string(r));
      priority.emplace_back();
    }
    chains_[f].resize(max_entry + 1);
    for (Time r = max_entry + 1; r >= 1; --r) {
      EdgeId id(edges.size());
      edges.push_back({"~c" + std::to_string(f) + "_" + std::to_string(r), chain_vertex[r],
                       chain_vertex[r - 1], 1, 1});
      chains_[f][r - 1] = id;
      priority[chain_vertex[r - 1].idx()].push_back(id);
    }
  }
  graph_ = Network(std::move(names), std::move(edges), top, g.destination(), std::move(priority));
}

EdgeId ExtendedNetwork::chain_edge(int slot, Time r) const { return chains_[slot][r - 1]; }

std::optional<AgentId> Instance::find_agent(const std::string& name) const {
  for (std::size_t a = 0; a < agents.size(); ++a) {
    if (agents[a].name == name) return AgentId(a);
  }
  return std::nullopt;
}

bool Instance::higher_original_priority(AgentId a, AgentId b) const {
  const AgentInfo& x = agents[a.idx()];
  const AgentInfo& y = agents[b.idx()];
  if (x.entry_time != y.entry_time) return x.entry_time < y.entry_time;
  return x.slot < y.slot;
}

Instance build_extended(const UnitNetwork& unit, const InflowSchedule& schedule) {
  std::size_t total = 0;
  int slots = 0;
  Time max_entry = 0;
  Time prev = 0;
  std::set<std::string> seen;
  for (const auto& batch : schedule) {
    if (batch.time < 1) throw Error(ErrorCode::kInvalidSchedule, "inflow times start at 1");
    if (batch.time <= prev) {
      throw Error(ErrorCode::kInvalidSchedule, "inflow times must be strictly increasing");
    }
    prev = batch.time;
    for (const auto& name : batch.agents) {
      if (!seen.insert(name).second) {
        throw Error(ErrorCode::kInvalidSchedule, "agent '" + name + "' enters twice");
      }
    }
    total += batch.agents.size();
    slots = std::max(slots, static_cast<int>(batch.agents.size()));
    max_entry = std::max(max_entry, batch.time);
  }
  if (total == 0) throw Error(ErrorCode::kEmptySchedule, "inflow schedule has no agents");

  Instance inst;
  inst.net = ExtendedNetwork(unit, slots, max_entry);
  inst.from_inflow = true;
  for (const auto& batch : schedule) {
    for (std::size_t k = 0; k < batch.agents.size(); ++k) {
      inst.agents.push_back({batch.agents[k], batch.time, static_cast<int>(k)});
    }
  }
  inst.initial = Configuration(0, inst.net.graph().num_edges(), inst.agents.size());
  for (std::size_t a = 0; a < inst.agents.size(); ++a) {
    const AgentInfo& info = inst.agents[a];
    inst.initial.push_back(inst.net.chain_edge(info.slot, info.entry_time), AgentId(a));
  }
  return inst;
}

Instance build_configured(const UnitNetwork& unit, Time time,
                          const std::vector<QueueSpec>& queues) {
  Instance inst;
  inst.net = ExtendedNetwork(unit, 0, 0);
  std::set<std::string> seen;
  for (const auto& q : queues) {
    for (const auto& name : q.agents) {
      if (!seen.insert(name).second) {
        throw Error(ErrorCode::kInvalidSchedule, "agent '" + name + "' placed twice");
      }
      inst.agents.push_back({name, -1, -1});
    }
  }
  if (inst.agents.empty()) throw Error(ErrorCode::kEmptySchedule, "configuration has no agents");
  inst.initial = Configuration(time, inst.net.graph().num_edges(), inst.agents.size());
  std::size_t next = 0;
  for (const auto& q : queues) {
    auto e = unit.net.find_edge(q.edge);
    if (!e) throw Error(ErrorCode::kInvalidNetwork, "queue on unknown edge '" + q.edge + "'");
    for (std::size_t k = 0; k < q.agents.size(); ++k) inst.initial.push_back(*e, AgentId(next++));
  }
  return inst;
}

}  // namespace dqgame
