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

#include <random>

#include "doctest.h"
#include "dqgame/bestresponse/best_response.hpp"
#include "support/instances.hpp"

namespace dqgame {
namespace {

using testing::Rng;

TEST_CASE("earliest arrival matches exhaustive search on random instances") {
  Rng rng(20261014);
  testing::RandomShape shape;
  for (int round = 0; round < 400; ++round) {
    Instance inst = testing::random_instance(rng, shape);
    const Network& g = inst.net.graph();
    PathProfile profile = testing::random_profile(inst, inst.initial, rng);
    for (AgentId a : inst.initial.present_agents()) {
      ArrivalTable table = earliest_arrival_table(g, inst.initial, profile, a);
      BruteForceResult bf = brute_force_best_response(g, inst.initial, profile, a);
      INFO("round " << round << " agent " << a.value());
      REQUIRE(table.at(g.destination()) == bf.best);
      PathProfile with = profile;
      with[a.idx()] = table.path_to(g, g.destination());
      CHECK(run_paths(g, inst.initial, with).exit_time(a) == bf.best);
    }
  }
}

// Interim configurations reached by random play, where queues hold several
// agents and the responder may have agents behind it.
Configuration random_interim(const Instance& inst, Rng& rng, int steps) {
  const Network& g = inst.net.graph();
  Configuration c = inst.initial;
  PathProfile profile = testing::random_profile(inst, c, rng);
  for (int s = 0; s < steps && c.num_present() > 0; ++s) {
    ActionProfile actions(inst.num_agents());
    for (AgentId a : c.present_agents()) {
      actions[a.idx()] = action_along(g, c, a, profile[a.idx()]);
    }
    Configuration next = step(g, c, actions);
    for (AgentId a : c.present_agents()) {
      profile[a.idx()] = advance_path(profile[a.idx()], actions[a.idx()]);
    }
    c = std::move(next);
  }
  return c;
}

TEST_CASE("earliest arrival matches exhaustive search from interim configurations") {
  Rng rng(77);
  testing::RandomShape shape;
  shape.max_agents = 7;
  shape.max_entry = 2;
  int checked = 0;
  for (int round = 0; round < 600; ++round) {
    Instance inst = testing::random_instance(rng, shape);
    const Network& g = inst.net.graph();
    Configuration c = random_interim(inst, rng, std::uniform_int_distribution<int>(1, 4)(rng));
    if (c.num_present() == 0) continue;
    PathProfile profile = testing::random_profile(inst, c, rng);
    for (AgentId a : c.present_agents()) {
      ArrivalTable table = earliest_arrival_table(g, c, profile, a);
      BruteForceResult bf = brute_force_best_response(g, c, profile, a);
      INFO("round " << round << " agent " << a.value());
      REQUIRE(table.at(g.destination()) == bf.best);
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

}  // namespace
}  // namespace dqgame
