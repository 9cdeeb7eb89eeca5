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

#include "dqgame/dynamics/dynamics.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <tuple>

namespace dqgame {

namespace {

const Configuration::Location& location_of(const Configuration& c, AgentId a) {
  if (!a.valid() || a.idx() >= c.num_agents() || !c.present(a)) {
    throw Error(ErrorCode::kUnknownAgent, "agent " + std::to_string(a.value()) +
                                              " is not in the configuration");
  }
  return *c.locate(a);
}

}  // namespace

std::vector<Action> action_set(const Network& graph, const Configuration& c, AgentId a) {
  const auto& loc = location_of(c, a);
  if (loc.position != 0) return {Action::stay()};
  VertexId v = graph.head(loc.edge);
  if (v == graph.destination()) return {Action::exit()};
  std::vector<Action> out;
  for (EdgeId e : graph.out_edges(v)) out.push_back(Action::move(e));
  return out;
}

Configuration step(const Network& graph, const Configuration& c, const ActionProfile& actions) {
  if (actions.size() != c.num_agents()) {
    throw Error(ErrorCode::kInvalidAction, "action profile has the wrong size");
  }
  struct Entrant {
    EdgeId to;
    int rank;
    AgentId agent;
  };
  std::vector<Entrant> entrants;
  for (std::size_t e = 0; e < c.num_edges(); ++e) {
    const auto& q = c.queue(EdgeId(e));
    for (std::size_t pos = 0; pos < q.size(); ++pos) {
      AgentId a = q[pos];
      const Action& act = actions[a.idx()];
      const bool head = pos == 0;
      const bool at_d = graph.head(EdgeId(e)) == graph.destination();
      bool ok = false;
      if (!head) {
        ok = act.kind == Action::Kind::kStay;
      } else if (at_d) {
        ok = act.kind == Action::Kind::kExit;
      } else if (act.kind == Action::Kind::kMove && act.edge.valid() &&
                 act.edge.idx() < graph.num_edges()) {
        ok = graph.tail(act.edge) == graph.head(EdgeId(e));
      }
      if (!ok) {
        throw Error(ErrorCode::kInvalidAction,
                    "agent " + std::to_string(a.value()) + " has an action outside its action set");
      }
      if (head && act.kind == Action::Kind::kMove) {
        entrants.push_back({act.edge, graph.rank(EdgeId(e)), a});
      }
    }
  }
  std::sort(entrants.begin(), entrants.end(), [](const Entrant& x, const Entrant& y) {
    return std::tie(x.to, x.rank) < std::tie(y.to, y.rank);
  });
  Configuration next(c.time() + 1, c.num_edges(), c.num_agents());
  std::size_t k = 0;
  for (std::size_t e = 0; e < c.num_edges(); ++e) {
    const auto& q = c.queue(EdgeId(e));
    for (std::size_t pos = 1; pos < q.size(); ++pos) next.push_back(EdgeId(e), q[pos]);
    while (k < entrants.size() && entrants[k].to == EdgeId(e)) {
      next.push_back(EdgeId(e), entrants[k].agent);
      ++k;
    }
  }
  return next;
}

Action action_along(const Network& graph, const Configuration& c, AgentId a, const Path& path) {
  const auto& loc = location_of(c, a);
  if (path.empty() || path.front() != loc.edge) {
    throw Error(ErrorCode::kPathNotFromCurrentEdge,
                "path of agent " + std::to_string(a.value()) + " does not start at its edge");
  }
  if (loc.position != 0) return Action::stay();
  if (graph.head(loc.edge) == graph.destination()) return Action::exit();
  if (path.size() < 2) {
    throw Error(ErrorCode::kInvalidPath, "path ends before the destination");
  }
  return Action::move(path[1]);
}

Path advance_path(const Path& path, const Action& action) {
  if (action.kind == Action::Kind::kStay) return path;
  if (action.kind == Action::Kind::kExit) return {};
  return Path(path.begin() + 1, path.end());
}

Time AgentTrace::time_at(VertexId v) const {
  int i = index_of(v);
  return i < 0 ? kNever : times[i];
}

int AgentTrace::index_of(VertexId v) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] == v) return static_cast<int>(i);
  }
  return -1;
}

void check_path(const Network& graph, const Configuration& c, AgentId a, const Path& path) {
  const auto& loc = location_of(c, a);
  if (path.empty() || path.front() != loc.edge) {
    throw Error(ErrorCode::kPathNotFromCurrentEdge,
                "path of agent " + std::to_string(a.value()) + " does not start at its edge");
  }
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!path[i].valid() || path[i].idx() >= graph.num_edges()) {
      throw Error(ErrorCode::kInvalidPath, "path uses an unknown edge");
    }
    if (i && graph.tail(path[i]) != graph.head(path[i - 1])) {
      throw Error(ErrorCode::kInvalidPath, "path of agent " + std::to_string(a.value()) +
                                               " is not contiguous");
    }
  }
  if (graph.head(path.back()) != graph.destination()) {
    throw Error(ErrorCode::kInvalidPath,
                "path of agent " + std::to_string(a.value()) + " does not end at d");
  }
}

Time default_horizon(const Network& graph, const Configuration& c) {
  return c.time() + static_cast<Time>(c.num_present()) * static_cast<Time>(graph.num_edges()) +
         static_cast<Time>(graph.stats().longest_path) + 1;
}

RoutingTrace run_paths(const Network& graph, const Configuration& c, const PathProfile& profile,
                       const RunOptions& options) {
  if (profile.size() != c.num_agents()) {
    throw Error(ErrorCode::kUnknownAgent, "profile size does not match the agent count");
  }
  RoutingTrace trace;
  trace.start = c.time();
  trace.agents.resize(c.num_agents());
  std::size_t remaining = 0;
  for (std::size_t a = 0; a < profile.size(); ++a) {
    if (profile[a].empty()) continue;
    check_path(graph, c, AgentId(a), profile[a]);
    AgentTrace& at = trace.agents[a];
    at.path = profile[a];
    at.vertices.push_back(graph.tail(profile[a].front()));
    at.times.push_back(c.time());
    ++remaining;
  }
  std::vector<std::deque<AgentId>> queues(c.num_edges());
  std::vector<EdgeId> active;
  std::vector<char> is_active(c.num_edges(), 0);
  for (std::size_t e = 0; e < c.num_edges(); ++e) {
    for (AgentId a : c.queue(EdgeId(e))) {
      if (!profile[a.idx()].empty()) queues[e].push_back(a);
    }
    if (!queues[e].empty()) {
      active.push_back(EdgeId(e));
      is_active[e] = 1;
    }
  }
  std::vector<std::size_t> cursor(c.num_agents(), 0);
  const Time horizon = options.horizon > 0 ? options.horizon : default_horizon(graph, c);

  struct Entrant {
    EdgeId to;
    int rank;
    AgentId agent;
  };
  std::vector<Entrant> entrants;
  std::vector<EdgeId> next_active;
  for (Time t = c.time(); remaining > 0; ++t) {
    if (t >= horizon) {
      throw Error(ErrorCode::kHorizonExceeded,
                  "routing did not finish by time " + std::to_string(horizon));
    }
    if (options.record_queues) {
      for (EdgeId e : active) {
        trace.queue_lengths.push_back({t, e, static_cast<int>(queues[e.idx()].size())});
      }
    }
    entrants.clear();
    for (EdgeId e : active) {
      AgentId h = queues[e.idx()].front();
      queues[e.idx()].pop_front();
      AgentTrace& at = trace.agents[h.idx()];
      at.vertices.push_back(graph.head(e));
      at.times.push_back(t + 1);
      std::size_t& k = cursor[h.idx()];
      if (k + 1 == at.path.size()) {
        --remaining;
      } else {
        ++k;
        entrants.push_back({at.path[k], graph.rank(e), h});
      }
    }
    std::sort(entrants.begin(), entrants.end(), [](const Entrant& x, const Entrant& y) {
      return std::tie(x.to, x.rank) < std::tie(y.to, y.rank);
    });
    next_active.clear();
    for (EdgeId e : active) {
      is_active[e.idx()] = 0;
    }
    for (const Entrant& en : entrants) queues[en.to.idx()].push_back(en.agent);
    for (EdgeId e : active) {
      if (!queues[e.idx()].empty() && !is_active[e.idx()]) {
        is_active[e.idx()] = 1;
        next_active.push_back(e);
      }
    }
    for (const Entrant& en : entrants) {
      if (!is_active[en.to.idx()]) {
        is_active[en.to.idx()] = 1;
        next_active.push_back(en.to);
      }
    }
    std::sort(next_active.begin(), next_active.end());
    active.swap(next_active);
  }
  return trace;
}

std::vector<Path> enumerate_paths(const Network& graph, EdgeId first, std::size_t guard) {
  std::vector<Path> out;
  Path current{first};
  // Iterative DFS over out-edge indices.
  std::vector<std::size_t> next_choice{0};
  while (!current.empty()) {
    VertexId v = graph.head(current.back());
    if (v == graph.destination()) {
      out.push_back(current);
      if (out.size() > guard) {
        throw Error(ErrorCode::kTooManyPaths,
                    "more than " + std::to_string(guard) + " paths from one edge");
      }
      current.pop_back();
      next_choice.pop_back();
      continue;
    }
    auto outs = graph.out_edges(v);
    std::size_t& k = next_choice.back();
    if (k == outs.size()) {
      current.pop_back();
      next_choice.pop_back();
      continue;
    }
    current.push_back(outs[k++]);
    next_choice.push_back(0);
  }
  return out;
}

std::size_t count_paths(const Network& graph, EdgeId first) {
  std::vector<double> ways(graph.num_vertices(), 0.0);
  ways[graph.destination().idx()] = 1.0;
  auto order = graph.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (EdgeId e : graph.out_edges(*it)) ways[it->idx()] += ways[graph.head(e).idx()];
  }
  double w = ways[graph.head(first).idx()];
  return w > 1e18 ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(w);
}

Path random_path(const Network& graph, EdgeId first, std::mt19937_64& rng) {
  Path p{first};
  while (graph.head(p.back()) != graph.destination()) {
    auto outs = graph.out_edges(graph.head(p.back()));
    std::uniform_int_distribution<std::size_t> pick(0, outs.size() - 1);
    p.push_back(outs[pick(rng)]);
  }
  return p;
}

std::vector<Time> run_original_paths(const UnitNetwork& unit, const InflowSchedule& schedule,
                                     const std::vector<std::vector<EdgeId>>& original_paths) {
  Instance inst = build_extended(unit, schedule);
  const Network& g = inst.net.graph();
  const Network& orig = unit.original;
  const std::size_t n = inst.num_agents();
  if (original_paths.size() != n) {
    throw Error(ErrorCode::kUnknownAgent, "one original path per agent is required");
  }
  for (std::size_t a = 0; a < n; ++a) {
    const auto& p = original_paths[a];
    if (p.empty() || orig.tail(p.front()) != orig.origin() ||
        orig.head(p.back()) != orig.destination()) {
      throw Error(ErrorCode::kInvalidPath, "original path must run from o to d");
    }
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (orig.tail(p[i]) != orig.head(p[i - 1])) {
        throw Error(ErrorCode::kInvalidPath, "original path is not contiguous");
      }
    }
  }
  std::vector<std::deque<AgentId>> queues(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    for (AgentId a : inst.initial.queue(EdgeId(e))) queues[e].push_back(a);
  }
  std::vector<int> cursor(n, -1);  // index of the original edge being traversed
  std::vector<Time> exit(n, kNever);
  std::size_t remaining = n;
  const Time horizon = default_horizon(g, inst.initial) * 4;
  struct Mover {
    VertexId at;
    int rank;
    AgentId agent;
    EdgeId from;
  };
  for (Time t = 0; remaining > 0; ++t) {
    if (t > horizon) throw Error(ErrorCode::kHorizonExceeded, "original routing did not finish");
    std::vector<Mover> movers;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      if (queues[e].empty()) continue;
      AgentId h = queues[e].front();
      queues[e].pop_front();
      movers.push_back({g.head(EdgeId(e)), g.rank(EdgeId(e)), h, EdgeId(e)});
    }
    std::sort(movers.begin(), movers.end(), [](const Mover& x, const Mover& y) {
      return std::tie(x.at, x.rank) < std::tie(y.at, y.rank);
    });
    std::vector<std::pair<EdgeId, AgentId>> pushes;
    std::vector<int> extra(g.num_edges(), 0);
    for (const Mover& mv : movers) {
      const std::size_t a = mv.agent.idx();
      EdgeId next;
      if (!inst.net.is_g_edge(mv.from)) {
        if (mv.at != g.origin() && mv.at != inst.net.g_origin()) {
          next = g.out_edges(mv.at)[0];
        }
      } else {
        const UnitProvenance& pv = unit.provenance[mv.from.idx()];
        const auto& lane = unit.lanes[pv.original.idx()][pv.lane];
        if (pv.segment + 1 < static_cast<int>(lane.size())) next = lane[pv.segment + 1];
      }
      if (!next.valid()) {
        // At the end of an original edge, or at o: choose the next lane.
        const auto& path = original_paths[a];
        if (cursor[a] + 1 == static_cast<int>(path.size())) {
          exit[a] = t + 1;
          --remaining;
          continue;
        }
        ++cursor[a];
        const auto& lanes = unit.lanes[path[cursor[a]].idx()];
        std::size_t best = 0;
        for (std::size_t l = 1; l < lanes.size(); ++l) {
          auto load = [&](std::size_t x) {
            EdgeId first = lanes[x].front();
            return queues[first.idx()].size() + extra[first.idx()];
          };
          if (load(l) < load(best)) best = l;
        }
        next = lanes[best].front();
      }
      ++extra[next.idx()];
      pushes.emplace_back(next, mv.agent);
    }
    for (const auto& [e, a] : pushes) queues[e.idx()].push_back(a);
  }
  return exit;
}

void write_trace_tsv(std::ostream& out, const Instance& inst, const RoutingTrace& trace) {
  const Network& g = inst.net.graph();
  out << "agent\tvertex\ttime\n";
  for (std::size_t a = 0; a < trace.agents.size(); ++a) {
    const AgentTrace& at = trace.agents[a];
    for (std::size_t k = 0; k < at.vertices.size(); ++k) {
      out << inst.agents[a].name << '\t' << g.vertex_name(at.vertices[k]) << '\t' << at.times[k]
          << '\n';
    }
  }
}

void write_queue_tsv(std::ostream& out, const Instance& inst, const RoutingTrace& trace) {
  const Network& g = inst.net.graph();
  out << "time\tedge\tlength\n";
  for (const QueueSample& s : trace.queue_lengths) {
    out << s.time << '\t' << g.edge_name(s.edge) << '\t' << s.length << '\n';
  }
}

}  // namespace dqgame
