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

#include "dqgame/bestresponse/best_response.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>

namespace dqgame {

QueueCounter::QueueCounter(const Network& graph) : graph_(&graph), lines_(graph.num_edges()) {}

QueueCounter::Line& QueueCounter::line_for(EdgeId e, Time from, Time to) {
  Line& line = lines_[e.idx()];
  if (line.occ.empty()) {
    line.start = from;
    line.occ.assign(to - from + 1, 0);
    line.mask.assign(to - from + 1, 0);
    return line;
  }
  if (from < line.start) {
    const auto grow = static_cast<std::size_t>(line.start - from);
    line.occ.insert(line.occ.begin(), grow, 0);
    line.mask.insert(line.mask.begin(), grow, 0);
    line.start = from;
  }
  const Time end = line.start + static_cast<Time>(line.occ.size()) - 1;
  if (to > end) {
    line.occ.resize(line.occ.size() + (to - end), 0);
    line.mask.resize(line.mask.size() + (to - end), 0);
  }
  return line;
}

void QueueCounter::add(const Path& path, const std::vector<Time>& times) {
  for (std::size_t k = 0; k < path.size(); ++k) {
    const Time from = times[k];
    const Time to = times[k + 1] - 1;
    Line& line = line_for(path[k], from, to);
    for (Time t = from; t <= to; ++t) ++line.occ[t - line.start];
    if (k > 0) {
      const int r = graph_->rank(path[k - 1]);
      if (r >= 64) {
        throw Error(ErrorCode::kInvalidNetwork, "vertices with more than 64 incoming edges "
                                                "are not supported by the queue counter");
      }
      line.mask[from - line.start] |= std::uint64_t{1} << r;
    }
  }
}

void QueueCounter::add_trace(const RoutingTrace& trace) {
  for (const AgentTrace& at : trace.agents) {
    if (at.routed()) add(at.path, at.times);
  }
}

int QueueCounter::occupancy(EdgeId e, Time t) const {
  const Line& line = lines_[e.idx()];
  if (line.occ.empty() || t < line.start) return 0;
  const auto i = static_cast<std::size_t>(t - line.start);
  return i < line.occ.size() ? line.occ[i] : 0;
}

int QueueCounter::entrants_no_higher(EdgeId e, Time t, int min_rank) const {
  const Line& line = lines_[e.idx()];
  if (line.mask.empty() || t < line.start || min_rank >= 64) return 0;
  const auto i = static_cast<std::size_t>(t - line.start);
  if (i >= line.mask.size()) return 0;
  return std::popcount(line.mask[i] >> min_rank);
}

Path ArrivalTable::path_to(const Network& graph, VertexId v) const {
  if (tau[v.idx()] == kNever) {
    throw Error(ErrorCode::kUnreachable, "vertex '" + graph.vertex_name(v) + "' is unreachable");
  }
  Path rev;
  for (VertexId w = v; w != graph.tail(first);) {
    EdgeId e = best_in[w.idx()];
    rev.push_back(e);
    w = graph.tail(e);
  }
  return Path(rev.rbegin(), rev.rend());
}

ArrivalTable earliest_arrival(const Network& graph, const QueueCounter& counter, EdgeId first,
                              Time start, int ahead) {
  ArrivalTable table;
  table.start = start;
  table.first = first;
  table.tau.assign(graph.num_vertices(), kNever);
  table.best_in.assign(graph.num_vertices(), EdgeId());
  table.tau[graph.tail(first).idx()] = start;
  const VertexId v1 = graph.head(first);
  table.tau[v1.idx()] = start + 1 + ahead;
  table.best_in[v1.idx()] = first;

  std::priority_queue<int, std::vector<int>, std::greater<int>> heap;
  std::vector<char> queued(graph.num_vertices(), 0);
  heap.push(graph.topo_index(v1));
  queued[v1.idx()] = 1;
  const auto order = graph.topological_order();
  while (!heap.empty()) {
    const VertexId u = order[heap.top()];
    heap.pop();
    const Time tu = table.tau[u.idx()];
    const int in_rank = graph.rank(table.best_in[u.idx()]);
    for (EdgeId e : graph.out_edges(u)) {
      const VertexId w = graph.head(e);
      const Time cand =
          tu + 1 + counter.occupancy(e, tu) - counter.entrants_no_higher(e, tu, in_rank);
      Time& tw = table.tau[w.idx()];
      EdgeId& bw = table.best_in[w.idx()];
      if (cand < tw || (cand == tw && graph.rank(e) < graph.rank(bw))) {
        tw = cand;
        bw = e;
      }
      if (!queued[w.idx()]) {
        queued[w.idx()] = 1;
        heap.push(graph.topo_index(w));
      }
    }
  }
  return table;
}

namespace {

int routed_ahead(const Configuration& c, const PathProfile& profile, AgentId zeta) {
  const auto& loc = *c.locate(zeta);
  int ahead = 0;
  const auto& q = c.queue(loc.edge);
  for (int i = 0; i < loc.position; ++i) {
    if (!profile[q[i].idx()].empty()) ++ahead;
  }
  return ahead;
}

}  // namespace

ArrivalTable earliest_arrival_table(const Network& graph, const Configuration& c,
                                    const PathProfile& profile, AgentId zeta) {
  if (!zeta.valid() || zeta.idx() >= c.num_agents() || !c.present(zeta)) {
    throw Error(ErrorCode::kUnknownAgent, "agent is not in the configuration");
  }
  PathProfile others = profile;
  others[zeta.idx()].clear();
  RoutingTrace trace = run_paths(graph, c, others);
  QueueCounter counter(graph);
  counter.add_trace(trace);
  return earliest_arrival(graph, counter, c.locate(zeta)->edge, c.time(),
                          routed_ahead(c, others, zeta));
}

Path best_response_path(const Network& graph, const Configuration& c, const PathProfile& profile,
                        AgentId zeta) {
  ArrivalTable table = earliest_arrival_table(graph, c, profile, zeta);
  return table.path_to(graph, graph.destination());
}

BruteForceResult brute_force_best_response(const Network& graph, const Configuration& c,
                                           const PathProfile& profile, AgentId zeta,
                                           std::size_t guard) {
  if (!zeta.valid() || zeta.idx() >= c.num_agents() || !c.present(zeta)) {
    throw Error(ErrorCode::kUnknownAgent, "agent is not in the configuration");
  }
  BruteForceResult result;
  PathProfile trial = profile;
  for (const Path& p : enumerate_paths(graph, c.locate(zeta)->edge, guard)) {
    trial[zeta.idx()] = p;
    const Time t = run_paths(graph, c, trial).exit_time(zeta);
    ++result.paths_tried;
    if (t < result.best) {
      result.best = t;
      result.optimal.clear();
    }
    if (t == result.best) result.optimal.push_back(p);
  }
  return result;
}

bool dominates(const Network& graph, const Configuration& c, const PathProfile& profile,
               AgentId zeta, AgentId j, VertexId v, std::size_t guard) {
  if (!c.present(zeta) || !c.present(j) || profile[j.idx()].empty()) {
    throw Error(ErrorCode::kUnknownAgent, "both agents must be routed");
  }
  const Path& pj = profile[j.idx()];
  int j_in_rank = -1;  // -1: v is j's starting vertex
  bool on_path = graph.tail(pj.front()) == v;
  for (EdgeId e : pj) {
    if (graph.head(e) == v) {
      on_path = true;
      j_in_rank = graph.rank(e);
    }
  }
  if (!on_path) {
    throw Error(ErrorCode::kVertexNotOnPath, "vertex is not on the path of agent " +
                                                 std::to_string(j.value()));
  }
  Time best_zeta = kNever, best_j = kNever;
  int best_zeta_rank = 1 << 30;
  PathProfile trial = profile;
  for (const Path& p : enumerate_paths(graph, c.locate(zeta)->edge, guard)) {
    trial[zeta.idx()] = p;
    RoutingTrace tr = run_paths(graph, c, trial);
    best_j = std::min(best_j, tr[j].time_at(v));
    const int idx = tr[zeta].index_of(v);
    if (idx <= 0) continue;  // zeta's own start vertex is not reached
    const Time tz = tr[zeta].times[idx];
    const int rank = graph.rank(p[idx - 1]);
    if (tz < best_zeta || (tz == best_zeta && rank < best_zeta_rank)) {
      best_zeta = tz;
      best_zeta_rank = rank;
    }
  }
  if (best_zeta == kNever) return false;
  if (best_zeta < best_j) return true;
  return best_zeta == best_j && j_in_rank >= 0 && best_zeta_rank <= j_in_rank;
}

}  // namespace dqgame
