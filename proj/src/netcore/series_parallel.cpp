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

#include "dqgame/netcore/series_parallel.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

namespace dqgame {

namespace {

struct Residual {
  struct Arc {
    int to;
    long cap;
    int rev;
  };
  std::vector<std::vector<Arc>> adj;

  explicit Residual(std::size_t n) : adj(n) {}
  void add(int u, int v, long cap) {
    adj[u].push_back({v, cap, static_cast<int>(adj[v].size())});
    adj[v].push_back({u, 0, static_cast<int>(adj[u].size()) - 1});
  }

  // Edmonds-Karp.
  long run(int s, int t) {
    long flow = 0;
    for (;;) {
      std::vector<std::pair<int, int>> parent(adj.size(), {-1, -1});
      std::deque<int> q{s};
      parent[s] = {s, -1};
      while (!q.empty() && parent[t].first < 0) {
        int u = q.front();
        q.pop_front();
        for (int i = 0; i < static_cast<int>(adj[u].size()); ++i) {
          const Arc& a = adj[u][i];
          if (a.cap > 0 && parent[a.to].first < 0) {
            parent[a.to] = {u, i};
            q.push_back(a.to);
          }
        }
      }
      if (parent[t].first < 0) return flow;
      long push = -1;
      for (int v = t; v != s; v = parent[v].first) {
        long c = adj[parent[v].first][parent[v].second].cap;
        push = push < 0 ? c : std::min(push, c);
      }
      for (int v = t; v != s; v = parent[v].first) {
        Arc& a = adj[parent[v].first][parent[v].second];
        a.cap -= push;
        adj[v][a.rev].cap += push;
      }
      flow += push;
    }
  }

  std::vector<bool> reachable(int s) const {
    std::vector<bool> seen(adj.size(), false);
    std::deque<int> q{s};
    seen[s] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (const Arc& a : adj[u]) {
        if (a.cap > 0 && !seen[a.to]) {
          seen[a.to] = true;
          q.push_back(a.to);
        }
      }
    }
    return seen;
  }
};

Residual residual_for(const Network& net, const std::vector<EdgeId>& edges) {
  Residual r(net.num_vertices());
  for (EdgeId e : edges) {
    r.add(net.tail(e).value(), net.head(e).value(), net.edge(e).capacity);
  }
  return r;
}

std::vector<EdgeId> all_edges(const Network& net) {
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i < net.num_edges(); ++i) out.push_back(EdgeId(i));
  return out;
}

}  // namespace

long max_flow(const Network& net, const std::vector<EdgeId>& edges, VertexId s, VertexId t) {
  Residual r = residual_for(net, edges);
  return r.run(s.value(), t.value());
}

Cut leftmost_min_cut(const Network& net, const std::vector<EdgeId>& edges, VertexId s,
                     VertexId t) {
  Residual r = residual_for(net, edges);
  r.run(s.value(), t.value());
  Cut cut;
  cut.source_side = r.reachable(s.value());
  for (EdgeId e : edges) {
    const bool left = cut.source_side[net.tail(e).idx()];
    if (left && !cut.source_side[net.head(e).idx()]) cut.edges.push_back(e);
    (left ? cut.left_part : cut.right_part).push_back(e);
  }
  return cut;
}

Cut leftmost_min_cut(const Network& net) {
  return leftmost_min_cut(net, all_edges(net), net.origin(), net.destination());
}

std::optional<SPDecomposition> sp_decompose(const Network& net) {
  SPDecomposition dec;
  struct Super {
    int node;
    VertexId tail;
    VertexId head;
    bool alive = true;
  };
  std::vector<Super> supers;
  for (std::size_t i = 0; i < net.num_edges(); ++i) {
    SPNode leaf;
    leaf.kind = SPKind::kLeaf;
    leaf.edge = EdgeId(i);
    leaf.source = net.tail(EdgeId(i));
    leaf.sink = net.head(EdgeId(i));
    leaf.edges = {EdgeId(i)};
    dec.nodes.push_back(leaf);
    supers.push_back({static_cast<int>(i), leaf.source, leaf.sink});
  }
  auto combine = [&](SPKind kind, int a, int b) {
    SPNode node;
    node.kind = kind;
    node.left = supers[a].node;
    node.right = supers[b].node;
    node.source = supers[a].tail;
    node.sink = supers[b].head;
    node.edges = dec.nodes[node.left].edges;
    const auto& more = dec.nodes[node.right].edges;
    node.edges.insert(node.edges.end(), more.begin(), more.end());
    std::sort(node.edges.begin(), node.edges.end());
    dec.nodes.push_back(std::move(node));
    supers[a].alive = supers[b].alive = false;
    supers.push_back({static_cast<int>(dec.nodes.size()) - 1, supers[a].tail, supers[b].head});
  };

  for (bool changed = true; changed;) {
    changed = false;
    // Parallel reductions.
    std::map<std::pair<std::int32_t, std::int32_t>, int> by_ends;
    const int before = static_cast<int>(supers.size());
    for (int i = 0; i < before; ++i) {
      if (!supers[i].alive) continue;
      auto key = std::make_pair(supers[i].tail.value(), supers[i].head.value());
      auto it = by_ends.find(key);
      if (it == by_ends.end()) {
        by_ends.emplace(key, i);
      } else {
        combine(SPKind::kParallel, it->second, i);
        it->second = static_cast<int>(supers.size()) - 1;
        changed = true;
      }
    }
    // Series reductions at internal vertices with one edge in and one out.
    std::vector<std::vector<int>> in(net.num_vertices()), out(net.num_vertices());
    for (int i = 0; i < static_cast<int>(supers.size()); ++i) {
      if (!supers[i].alive) continue;
      in[supers[i].head.idx()].push_back(i);
      out[supers[i].tail.idx()].push_back(i);
    }
    for (std::size_t v = 0; v < net.num_vertices(); ++v) {
      if (VertexId(v) == net.origin() || VertexId(v) == net.destination()) continue;
      if (in[v].size() != 1 || out[v].size() != 1) continue;
      int a = in[v][0], b = out[v][0];
      if (!supers[a].alive || !supers[b].alive) continue;
      combine(SPKind::kSeries, a, b);
      changed = true;
    }
  }
  int remaining = -1, count = 0;
  for (int i = 0; i < static_cast<int>(supers.size()); ++i) {
    if (supers[i].alive) {
      remaining = i;
      ++count;
    }
  }
  if (count != 1 || supers[remaining].tail != net.origin() ||
      supers[remaining].head != net.destination()) {
    return std::nullopt;
  }
  dec.root = supers[remaining].node;
  for (auto& node : dec.nodes) node.cut = leftmost_min_cut(net, node.edges, node.source, node.sink);
  return dec;
}

SPDecomposition require_series_parallel(const Network& net) {
  auto dec = sp_decompose(net);
  if (!dec) throw Error(ErrorCode::kNotSeriesParallel, "network is not series-parallel");
  return *std::move(dec);
}

namespace {

std::string shape_of(const SPDecomposition& dec, int id) {
  const SPNode& node = dec.nodes[id];
  if (node.kind == SPKind::kLeaf) return "e";
  std::vector<std::string> parts;
  std::vector<int> stack{node.right, node.left};
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    if (dec.nodes[c].kind == node.kind) {
      stack.push_back(dec.nodes[c].right);
      stack.push_back(dec.nodes[c].left);
    } else {
      parts.push_back(shape_of(dec, c));
    }
  }
  if (node.kind == SPKind::kParallel) std::sort(parts.begin(), parts.end());
  std::string s = node.kind == SPKind::kSeries ? "S(" : "P(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s + ")";
}

}  // namespace

std::string canonical_shape(const SPDecomposition& dec) { return shape_of(dec, dec.root); }

}  // namespace dqgame
