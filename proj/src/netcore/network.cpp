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

#include "dqgame/netcore/network.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace dqgame {

namespace {

VertexId intern_vertex(const std::string& name, std::vector<std::string>& names,
                       std::map<std::string, VertexId>& lookup) {
  auto it = lookup.find(name);
  if (it != lookup.end()) return it->second;
  VertexId id(names.size());
  names.push_back(name);
  lookup.emplace(name, id);
  return id;
}

struct Resolved {
  std::vector<std::string> names;
  std::vector<Edge> edges;
  VertexId origin;
  VertexId destination;
  std::vector<std::vector<EdgeId>> priority;
};

Resolved resolve(const NetworkSpec& spec) {
  Resolved out;
  std::map<std::string, VertexId> vlookup;
  for (const auto& v : spec.vertices) {
    if (vlookup.count(v)) {
      throw Error(ErrorCode::kInvalidNetwork, "duplicate vertex '" + v + "'");
    }
    intern_vertex(v, out.names, vlookup);
  }
  const bool closed = !spec.vertices.empty();
  std::map<std::string, EdgeId> elookup;
  for (const auto& es : spec.edges) {
    if (es.name.empty()) throw Error(ErrorCode::kInvalidNetwork, "edge without a name");
    if (elookup.count(es.name)) {
      throw Error(ErrorCode::kInvalidNetwork, "duplicate edge '" + es.name + "'");
    }
    for (const auto* end : {&es.tail, &es.head}) {
      if (closed && !vlookup.count(*end)) {
        throw Error(ErrorCode::kInvalidNetwork,
                    "edge '" + es.name + "' uses undeclared vertex '" + *end + "'");
      }
    }
    Edge e{es.name, intern_vertex(es.tail, out.names, vlookup),
           intern_vertex(es.head, out.names, vlookup), es.capacity, es.transit};
    elookup.emplace(es.name, EdgeId(out.edges.size()));
    out.edges.push_back(e);
  }
  auto endpoint = [&](const std::string& name, const char* role) {
    auto it = vlookup.find(name);
    if (it == vlookup.end()) {
      throw Error(ErrorCode::kInvalidNetwork,
                  std::string(role) + " '" + name + "' is not a vertex");
    }
    return it->second;
  };
  out.origin = endpoint(spec.origin, "origin");
  out.destination = endpoint(spec.destination, "destination");

  out.priority.assign(out.names.size(), {});
  std::vector<bool> given(out.names.size(), false);
  for (const auto& [vname, order] : spec.priorities) {
    auto vit = vlookup.find(vname);
    if (vit == vlookup.end()) {
      throw Error(ErrorCode::kIncompletePriorityOrder,
                  "priority order given for unknown vertex '" + vname + "'");
    }
    for (const auto& ename : order) {
      auto eit = elookup.find(ename);
      if (eit == elookup.end()) {
        throw Error(ErrorCode::kIncompletePriorityOrder,
                    "priority order at '" + vname + "' names unknown edge '" + ename + "'");
      }
      out.priority[vit->second.idx()].push_back(eit->second);
    }
    given[vit->second.idx()] = true;
  }
  // A single incoming edge needs no explicit order.
  std::vector<std::vector<EdgeId>> incoming(out.names.size());
  for (std::size_t i = 0; i < out.edges.size(); ++i) {
    incoming[out.edges[i].head.idx()].push_back(EdgeId(i));
  }
  for (std::size_t v = 0; v < out.names.size(); ++v) {
    if (!given[v] && incoming[v].size() == 1) out.priority[v] = incoming[v];
  }
  return out;
}

}  // namespace

Network::Network(const NetworkSpec& spec) {
  Resolved r = resolve(spec);
  vertex_names_ = std::move(r.names);
  edges_ = std::move(r.edges);
  origin_ = r.origin;
  destination_ = r.destination;
  validate_and_index(std::move(r.priority));
}

Network::Network(std::vector<std::string> vertex_names, std::vector<Edge> edges,
                 VertexId origin, VertexId destination,
                 std::vector<std::vector<EdgeId>> priority)
    : vertex_names_(std::move(vertex_names)),
      edges_(std::move(edges)),
      origin_(origin),
      destination_(destination) {
  validate_and_index(std::move(priority));
}

void Network::validate_and_index(std::vector<std::vector<EdgeId>> priority) {
  const std::size_t n = vertex_names_.size();
  const std::size_t m = edges_.size();
  if (!origin_.valid() || !destination_.valid() || origin_.idx() >= n ||
      destination_.idx() >= n) {
    throw Error(ErrorCode::kInvalidNetwork, "origin or destination out of range");
  }
  if (origin_ == destination_) {
    throw Error(ErrorCode::kInvalidNetwork, "origin equals destination");
  }
  if (m == 0) throw Error(ErrorCode::kInvalidNetwork, "network has no edges");

  vertex_lookup_.clear();
  for (std::size_t v = 0; v < n; ++v) {
    if (!vertex_lookup_.emplace(vertex_names_[v], VertexId(v)).second) {
      throw Error(ErrorCode::kInvalidNetwork, "duplicate vertex '" + vertex_names_[v] + "'");
    }
  }
  edge_lookup_.clear();
  out_.assign(n, {});
  std::vector<std::vector<EdgeId>> incoming(n);
  for (std::size_t i = 0; i < m; ++i) {
    const Edge& e = edges_[i];
    if (!e.tail.valid() || !e.head.valid() || e.tail.idx() >= n || e.head.idx() >= n) {
      throw Error(ErrorCode::kInvalidNetwork, "edge '" + e.name + "' has an invalid endpoint");
    }
    if (e.capacity < 1 || e.transit < 1) {
      throw Error(ErrorCode::kInvalidNetwork,
                  "edge '" + e.name + "' needs capacity >= 1 and transit >= 1");
    }
    if (e.tail == e.head) throw Error(ErrorCode::kCyclicGraph, "self-loop on edge '" + e.name + "'");
    if (!edge_lookup_.emplace(e.name, EdgeId(i)).second) {
      throw Error(ErrorCode::kInvalidNetwork, "duplicate edge '" + e.name + "'");
    }
    out_[e.tail.idx()].push_back(EdgeId(i));
    incoming[e.head.idx()].push_back(EdgeId(i));
  }
  if (!incoming[origin_.idx()].empty()) {
    throw Error(ErrorCode::kInvalidNetwork, "origin has incoming edges");
  }
  if (!out_[destination_.idx()].empty()) {
    throw Error(ErrorCode::kInvalidNetwork, "destination has outgoing edges");
  }

  // Kahn's algorithm; smallest id first keeps the order deterministic.
  std::vector<int> indeg(n);
  for (std::size_t v = 0; v < n; ++v) indeg[v] = static_cast<int>(incoming[v].size());
  std::set<std::int32_t> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.insert(static_cast<std::int32_t>(v));
  }
  topo_.clear();
  while (!ready.empty()) {
    VertexId v(*ready.begin());
    ready.erase(ready.begin());
    topo_.push_back(v);
    for (EdgeId e : out_[v.idx()]) {
      if (--indeg[head(e).idx()] == 0) ready.insert(head(e).value());
    }
  }
  if (topo_.size() != n) throw Error(ErrorCode::kCyclicGraph, "network contains a directed cycle");
  topo_index_.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) topo_index_[topo_[i].idx()] = static_cast<int>(i);

  std::vector<bool> from_o(n, false), to_d(n, false);
  from_o[origin_.idx()] = true;
  for (VertexId v : topo_) {
    if (!from_o[v.idx()]) continue;
    for (EdgeId e : out_[v.idx()]) from_o[head(e).idx()] = true;
  }
  to_d[destination_.idx()] = true;
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    for (EdgeId e : out_[it->idx()]) {
      if (to_d[head(e).idx()]) to_d[it->idx()] = true;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!from_o[edges_[i].tail.idx()] || !to_d[edges_[i].head.idx()]) {
      throw Error(ErrorCode::kEdgeOffAllPaths,
                  "edge '" + edges_[i].name + "' lies on no origin-destination path");
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!from_o[v] || !to_d[v]) {
      throw Error(ErrorCode::kInvalidNetwork,
                  "vertex '" + vertex_names_[v] + "' lies on no origin-destination path");
    }
  }

  priority.resize(n);
  in_.assign(n, {});
  rank_.assign(m, -1);
  for (std::size_t v = 0; v < n; ++v) {
    auto& order = priority[v];
    auto expected = incoming[v];
    auto given = order;
    std::sort(expected.begin(), expected.end());
    std::sort(given.begin(), given.end());
    if (given != expected) {
      std::string missing;
      for (EdgeId e : expected) {
        if (!std::binary_search(given.begin(), given.end(), e)) {
          missing += (missing.empty() ? "" : ", ") + edges_[e.idx()].name;
        }
      }
      throw Error(ErrorCode::kIncompletePriorityOrder,
                  "priority order at vertex '" + vertex_names_[v] +
                      "' must list each incoming edge exactly once" +
                      (missing.empty() ? std::string() : " (missing: " + missing + ")"));
    }
    in_[v] = order;
    for (std::size_t k = 0; k < order.size(); ++k) rank_[order[k].idx()] = static_cast<int>(k);
  }

  stats_ = {};
  stats_.vertices = n;
  stats_.m = m;
  for (std::size_t v = 0; v < n; ++v) {
    stats_.max_indegree = std::max(stats_.max_indegree, in_[v].size());
  }
  std::vector<std::size_t> longest(n, 0);
  for (VertexId v : topo_) {
    for (EdgeId e : out_[v.idx()]) {
      longest[head(e).idx()] = std::max(longest[head(e).idx()], longest[v.idx()] + 1);
    }
  }
  stats_.longest_path = longest[destination_.idx()];
}

std::optional<VertexId> Network::find_vertex(const std::string& name) const {
  auto it = vertex_lookup_.find(name);
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Network::find_edge(const std::string& name) const {
  auto it = edge_lookup_.find(name);
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

bool Network::is_unit() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [](const Edge& e) { return e.capacity == 1 && e.transit == 1; });
}

NetworkSpec Network::to_spec() const {
  NetworkSpec spec;
  spec.vertices = vertex_names_;
  for (const Edge& e : edges_) {
    spec.edges.push_back({e.name, vertex_names_[e.tail.idx()], vertex_names_[e.head.idx()],
                          e.capacity, e.transit});
  }
  spec.origin = vertex_names_[origin_.idx()];
  spec.destination = vertex_names_[destination_.idx()];
  for (std::size_t v = 0; v < in_.size(); ++v) {
    if (in_[v].size() < 2) continue;
    auto& order = spec.priorities[vertex_names_[v]];
    for (EdgeId e : in_[v]) order.push_back(edges_[e.idx()].name);
  }
  return spec;
}

GraphStats validate_and_stats(const NetworkSpec& spec) { return Network(spec).stats(); }

std::vector<Time> hops_to_destination(const Network& net) {
  std::vector<Time> dist(net.num_vertices(), kNever);
  dist[net.destination().idx()] = 0;
  auto order = net.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (EdgeId e : net.out_edges(*it)) {
      Time h = dist[net.head(e).idx()];
      if (h != kNever) dist[it->idx()] = std::min(dist[it->idx()], h + 1);
    }
  }
  return dist;
}

}  // namespace dqgame
