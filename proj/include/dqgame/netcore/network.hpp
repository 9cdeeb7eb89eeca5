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

#ifndef DQGAME_NETCORE_NETWORK_HPP_
#define DQGAME_NETCORE_NETWORK_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dqgame/common.hpp"

namespace dqgame {

// Name-based description of a network, as read from a scenario file.
struct EdgeSpec {
  std::string name;
  std::string tail;
  std::string head;
  int capacity = 1;
  int transit = 1;
};

struct NetworkSpec {
  std::vector<std::string> vertices;  // may be empty; edges introduce vertices
  std::vector<EdgeSpec> edges;
  std::string origin;
  std::string destination;
  // Incoming edges of a vertex, highest priority first. Vertices with a
  // single incoming edge may be omitted.
  std::map<std::string, std::vector<std::string>> priorities;
};

struct Edge {
  std::string name;
  VertexId tail;
  VertexId head;
  int capacity = 1;
  int transit = 1;
};

struct GraphStats {
  std::size_t vertices = 0;
  std::size_t m = 0;            // number of edges
  std::size_t longest_path = 0; // L, edges on a longest o-d path
  std::size_t max_indegree = 0; // Lambda
};

// Directed acyclic multigraph with origin o and destination d, every edge on
// some o-d path, and a strict priority order over the incoming edges of each
// vertex. Construction validates all of this and throws dqgame::Error.
class Network {
 public:
  Network() = default;
  explicit Network(const NetworkSpec& spec);
  // `priority[v]` lists the incoming edges of v, highest priority first.
  Network(std::vector<std::string> vertex_names, std::vector<Edge> edges,
          VertexId origin, VertexId destination,
          std::vector<std::vector<EdgeId>> priority);

  std::size_t num_vertices() const { return vertex_names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_[e.idx()]; }
  VertexId tail(EdgeId e) const { return edges_[e.idx()].tail; }
  VertexId head(EdgeId e) const { return edges_[e.idx()].head; }
  const std::string& vertex_name(VertexId v) const { return vertex_names_[v.idx()]; }
  const std::string& edge_name(EdgeId e) const { return edges_[e.idx()].name; }

  VertexId origin() const { return origin_; }
  VertexId destination() const { return destination_; }

  // Incoming edges in priority order (highest first).
  std::span<const EdgeId> in_edges(VertexId v) const { return in_[v.idx()]; }
  std::span<const EdgeId> out_edges(VertexId v) const { return out_[v.idx()]; }

  // Position of e in the order of its head vertex; 0 is the highest priority.
  int rank(EdgeId e) const { return rank_[e.idx()]; }

  std::span<const VertexId> topological_order() const { return topo_; }
  int topo_index(VertexId v) const { return topo_index_[v.idx()]; }

  std::optional<VertexId> find_vertex(const std::string& name) const;
  std::optional<EdgeId> find_edge(const std::string& name) const;

  bool is_unit() const;
  const GraphStats& stats() const { return stats_; }

  // Rebuilds the name-based description. Round-trips through Network(spec).
  NetworkSpec to_spec() const;

 private:
  void validate_and_index(std::vector<std::vector<EdgeId>> priority);

  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  VertexId origin_;
  VertexId destination_;
  std::vector<std::vector<EdgeId>> in_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<int> rank_;
  std::vector<VertexId> topo_;
  std::vector<int> topo_index_;
  std::map<std::string, VertexId> vertex_lookup_;
  std::map<std::string, EdgeId> edge_lookup_;
  GraphStats stats_;
};

// Validates `spec` and returns its statistics (m, L, Lambda).
GraphStats validate_and_stats(const NetworkSpec& spec);

// Unweighted hop distance from each vertex to d (kNever if d is unreachable).
std::vector<Time> hops_to_destination(const Network& net);

}  // namespace dqgame

#endif  // DQGAME_NETCORE_NETWORK_HPP_
