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

#include "support/instances.hpp"

#include <algorithm>
#include <string>

namespace dqgame::testing {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

void add_priorities(NetworkSpec& spec, Rng& rng) {
  std::map<std::string, std::vector<std::string>> incoming;
  for (const auto& e : spec.edges) incoming[e.head].push_back(e.name);
  for (auto& [v, list] : incoming) {
    if (list.size() < 2) continue;
    std::shuffle(list.begin(), list.end(), rng);
    spec.priorities[v] = list;
  }
}

}  // namespace

NetworkSpec random_network_spec(Rng& rng, const RandomShape& shape) {
  const int max_n = std::min(shape.max_vertices, shape.max_edges / 2 + 2);
  const int n = uniform(rng, 2, std::max(2, max_n));
  auto vname = [n](int v) {
    if (v == 0) return std::string("o");
    if (v == n - 1) return std::string("d");
    return "v" + std::to_string(v);
  };
  NetworkSpec spec;
  spec.origin = "o";
  spec.destination = "d";
  auto add = [&](int u, int v) {
    EdgeSpec e;
    e.name = "e" + std::to_string(spec.edges.size());
    e.tail = vname(u);
    e.head = vname(v);
    e.capacity = uniform(rng, 1, shape.max_capacity);
    e.transit = uniform(rng, 1, shape.max_transit);
    spec.edges.push_back(e);
  };
  if (n == 2) {
    add(0, 1);
  } else {
    for (int v = 1; v < n - 1; ++v) {
      add(uniform(rng, 0, v - 1), v);
      add(v, uniform(rng, v + 1, n - 1));
    }
  }
  const int target = uniform(rng, static_cast<int>(spec.edges.size()), shape.max_edges);
  while (static_cast<int>(spec.edges.size()) < target) {
    int u = uniform(rng, 0, n - 2);
    int v = uniform(rng, u + 1, n - 1);
    add(u, v);
  }
  add_priorities(spec, rng);
  return spec;
}

InflowSchedule random_schedule(Rng& rng, const RandomShape& shape) {
  const int agents = uniform(rng, 1, shape.max_agents);
  std::vector<int> per_time(shape.max_entry + 1, 0);
  for (int a = 0; a < agents; ++a) ++per_time[uniform(rng, 1, shape.max_entry)];
  InflowSchedule schedule;
  int next = 0;
  for (int t = 1; t <= shape.max_entry; ++t) {
    if (per_time[t] == 0) continue;
    InflowBatch batch;
    batch.time = t;
    for (int k = 0; k < per_time[t]; ++k) batch.agents.push_back("a" + std::to_string(next++));
    schedule.push_back(batch);
  }
  return schedule;
}

Instance random_instance(Rng& rng, const RandomShape& shape) {
  Network net(random_network_spec(rng, shape));
  return build_extended(normalize_to_unit(net), random_schedule(rng, shape));
}

PathProfile random_profile(const Instance& inst, const Configuration& c, Rng& rng) {
  PathProfile profile(inst.num_agents());
  for (AgentId a : c.present_agents()) {
    profile[a.idx()] = dqgame::random_path(inst.net.graph(), c.locate(a)->edge, rng);
  }
  return profile;
}

Configuration random_interim(const Instance& inst, Rng& rng, int steps) {
  const Network& g = inst.net.graph();
  Configuration c = inst.initial;
  PathProfile profile = random_profile(inst, c, rng);
  for (int s = 0; s < steps && c.num_present() > 0; ++s) {
    ActionProfile actions(inst.num_agents());
    for (AgentId a : c.present_agents()) actions[a.idx()] = action_along(g, c, a, profile[a.idx()]);
    Configuration next = step(g, c, actions);
    for (AgentId a : c.present_agents()) {
      profile[a.idx()] = advance_path(profile[a.idx()], actions[a.idx()]);
    }
    c = std::move(next);
  }
  return c;
}

NetworkSpec random_sp_spec(Rng& rng, int max_edges) {
  // Grow by replacing a random edge with a series or parallel pair.
  struct E {
    int u, v;
  };
  std::vector<E> edges{{0, 1}};
  int next_vertex = 2;
  const int target = uniform(rng, 1, max_edges);
  while (static_cast<int>(edges.size()) < target) {
    const int i = uniform(rng, 0, static_cast<int>(edges.size()) - 1);
    if (uniform(rng, 0, 1) == 0) {
      const int w = next_vertex++;
      const E old = edges[i];
      edges[i] = {old.u, w};
      edges.push_back({w, old.v});
    } else {
      edges.push_back(edges[i]);
    }
  }
  NetworkSpec spec;
  spec.origin = "o";
  spec.destination = "d";
  auto vname = [](int v) {
    if (v == 0) return std::string("o");
    if (v == 1) return std::string("d");
    return "v" + std::to_string(v);
  };
  for (std::size_t i = 0; i < edges.size(); ++i) {
    spec.edges.push_back({"e" + std::to_string(i), vname(edges[i].u), vname(edges[i].v), 1, 1});
  }
  add_priorities(spec, rng);
  return spec;
}

}  // namespace dqgame::testing
