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

#include <algorithm>
#include <random>

#include "dqgame/equilibrium/equilibrium.hpp"

namespace dqgame {

namespace {

struct Candidate {
  Time lower_bound;
  AgentId agent;
  EdgeId first;
  int position;
};

struct Evaluated {
  AgentId agent;
  int position;
  ArrivalTable table;
};

void check_base_invariance(const Network& graph, const Configuration& c, const PathProfile& base,
                           const RoutingTrace& alone, const DominatingOptions& options) {
  std::mt19937_64 rng(options.seed);
  for (int s = 0; s < options.base_check_samples; ++s) {
    PathProfile trial = base;
    bool any_other = false;
    for (AgentId a : c.present_agents()) {
      if (!trial[a.idx()].empty()) continue;
      trial[a.idx()] = random_path(graph, c.locate(a)->edge, rng);
      any_other = true;
    }
    if (!any_other) return;
    RoutingTrace with = run_paths(graph, c, trial);
    for (std::size_t a = 0; a < base.size(); ++a) {
      if (base[a].empty()) continue;
      if (with.agents[a].times != alone.agents[a].times) {
        throw Error(ErrorCode::kBaseInvarianceViolated,
                    "base path of agent " + std::to_string(a) + " depends on other agents");
      }
    }
  }
}

}  // namespace

DominatingProfile iterative_dominating_profile(const Network& graph, const Configuration& c,
                                               const DominatingOptions& options) {
  const std::size_t n = c.num_agents();
  const Time r = c.time();
  DominatingProfile out;
  out.paths.assign(n, {});
  std::vector<char> assigned(n, 0);
  QueueCounter counter(graph);

  if (options.base != nullptr) {
    const PathProfile& base = *options.base;
    if (base.size() != n) throw Error(ErrorCode::kUnknownAgent, "base profile has the wrong size");
    for (std::size_t a = 0; a < n; ++a) {
      if (base[a].empty()) continue;
      check_path(graph, c, AgentId(a), base[a]);
      assigned[a] = 1;
      out.paths[a] = base[a];
    }
    RoutingTrace alone = run_paths(graph, c, base);
    check_base_invariance(graph, c, base, alone, options);
    counter.add_trace(alone);
  }

  const std::vector<Time> hops = hops_to_destination(graph);
  std::vector<Candidate> candidates;
  for (AgentId a : c.present_agents()) {
    if (assigned[a.idx()]) continue;
    const auto& loc = *c.locate(a);
    candidates.push_back({r + 1 + hops[graph.head(loc.edge).idx()], a, loc.edge, loc.position});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    return x.lower_bound != y.lower_bound ? x.lower_bound < y.lower_bound : x.agent < y.agent;
  });

  auto assigned_ahead = [&](const Candidate& cand) {
    int ahead = 0;
    const auto& q = c.queue(cand.first);
    for (int i = 0; i < cand.position; ++i) ahead += assigned[q[i].idx()] ? 1 : 0;
    return ahead;
  };

  const VertexId d = graph.destination();
  std::size_t front = 0;
  for (std::size_t done = 0; done < candidates.size(); ++done) {
    while (assigned[candidates[front].agent.idx()]) ++front;
    // Agents whose lower bound exceeds the best arrival found cannot tie it.
    std::vector<Evaluated> evaluated;
    Time best = kNever;
    for (std::size_t k = front; k < candidates.size(); ++k) {
      const Candidate& cand = candidates[k];
      if (assigned[cand.agent.idx()]) continue;
      if (cand.lower_bound > best) break;
      ArrivalTable table = earliest_arrival(graph, counter, cand.first, r, assigned_ahead(cand));
      const Time t = table.at(d);
      if (t > best) continue;
      if (t < best) {
        best = t;
        evaluated.clear();
      }
      evaluated.push_back({cand.agent, cand.position, std::move(table)});
    }

    // Walk back from d. At each vertex keep the agents reaching it earliest,
    // then those whose best last edge is the highest-priority one.
    std::vector<const Evaluated*> pool;
    for (const auto& ev : evaluated) pool.push_back(&ev);
    VertexId w = d;
    for (;;) {
      Time tau = kNever;
      for (const auto* ev : pool) tau = std::min(tau, ev->table.at(w));
      std::erase_if(pool, [&](const Evaluated* ev) { return ev->table.at(w) != tau; });
      if (tau <= r) break;
      EdgeId top = pool.front()->table.best_in[w.idx()];
      for (const auto* ev : pool) {
        EdgeId e = ev->table.best_in[w.idx()];
        if (graph.rank(e) < graph.rank(top)) top = e;
      }
      std::erase_if(pool, [&](const Evaluated* ev) { return ev->table.best_in[w.idx()] != top; });
      w = graph.tail(top);
    }
    const Evaluated* chosen = *std::min_element(
        pool.begin(), pool.end(),
        [](const Evaluated* x, const Evaluated* y) { return x->position < y->position; });

    Path path = chosen->table.path_to(graph, d);
    std::vector<Time> times{r};
    for (EdgeId e : path) times.push_back(chosen->table.at(graph.head(e)));
    counter.add(path, times);
    assigned[chosen->agent.idx()] = 1;
    out.paths[chosen->agent.idx()] = std::move(path);
    out.order.push_back(chosen->agent);
  }
  return out;
}

}  // namespace dqgame
