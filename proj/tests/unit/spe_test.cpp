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

#include "doctest.h"
#include "dqgame/spe/spe.hpp"
#include "support/instances.hpp"

namespace dqgame {
namespace {

using testing::random_interim;
using testing::Rng;

testing::RandomShape tiny_shape() {
  testing::RandomShape shape;
  shape.max_vertices = 6;
  shape.max_edges = 8;
  shape.max_agents = 4;
  shape.max_entry = 2;
  return shape;
}

AuditOptions bounded_audit() {
  AuditOptions opts;
  opts.max_nodes = 200000;
  return opts;
}

TEST_CASE("histories") {
  NetworkSpec s;
  s.origin = "o";
  s.destination = "d";
  s.edges = {{"a", "o", "d", 1, 1}, {"b", "o", "d", 1, 1}};
  s.priorities = {{"d", {"a", "b"}}};
  Instance inst = build_configured(normalize_to_unit(Network(s)), 0, {{"a", {"x", "y"}}});
  const Network& g = inst.net.graph();
  const History root = root_history(inst.initial);
  CHECK(root->depth == 0);
  CHECK(root->parent == nullptr);
  const History h1 = extend(root, g, {Action::exit(), Action::stay()});
  CHECK(h1->depth == 1);
  CHECK(h1->parent == root);
  CHECK(h1->config.num_present() == 1);
  CHECK(h1->key.rfind(root->key, 0) == 0);
  // Same configuration, different history.
  const History h2 = extend(h1, g, {Action::exit(), Action::exit()});
  CHECK(h2->config.num_present() == 0);
  CHECK(h2->key != h1->key);
}

TEST_CASE("actions prescribed by paths") {
  NetworkSpec s;
  s.origin = "o";
  s.destination = "d";
  s.edges = {{"a", "o", "v", 1, 1}, {"b", "v", "d", 1, 1}, {"c", "v", "d", 1, 1}};
  s.priorities = {{"d", {"b", "c"}}};
  Instance inst = build_configured(normalize_to_unit(Network(s)), 0, {{"a", {"x", "y"}}});
  const Network& g = inst.net.graph();
  const PathProfile p{{EdgeId(0), EdgeId(2)}, {EdgeId(0), EdgeId(1)}};
  const ActionProfile act = actions_from_paths(g, inst.initial, p);
  CHECK(act[0] == Action::move(EdgeId(2)));
  CHECK(act[1] == Action::stay());
}

TEST_CASE("sigma-star realizes the dominating profile in every subgame") {
  Rng rng(99);
  testing::RandomShape shape;
  for (int round = 0; round < 150; ++round) {
    Instance inst = testing::random_instance(rng, shape);
    const Network& g = inst.net.graph();
    const Configuration c = random_interim(inst, rng, static_cast<int>(rng() % 4));
    if (c.num_present() == 0) continue;
    SigmaStar sigma(g);
    const PathProfile dom = iterative_dominating_profile(g, c).paths;
    INFO("round " << round);
    CHECK(sigma.profile_at(c) == dom);
    const History root = root_history(c);
    CHECK(induced_paths(g, sigma, root) == dom);
    const RoutingTrace expected = run_paths(g, c, dom);
    const PlayResult played = play(g, sigma, root);
    for (AgentId a : c.present_agents()) CHECK(played.exit[a.idx()] == expected.exit_time(a));
  }
}

TEST_CASE("sigma-star passes the exhaustive one-deviation audit") {
  Rng rng(7);
  const testing::RandomShape shape = tiny_shape();
  int exhaustive = 0;
  for (int round = 0; round < 60; ++round) {
    Instance inst = testing::random_instance(rng, shape);
    const Network& g = inst.net.graph();
    SigmaStar sigma(g);
    const AuditResult r = one_deviation_audit(g, inst.initial, sigma, bounded_audit());
    INFO("round " << round);
    CHECK(r.passed);
    if (!r.truncated) ++exhaustive;
  }
  CHECK(exhaustive >= 50);
}

TEST_CASE("sampled audit") {
  Rng rng(12);
  testing::RandomShape shape;
  shape.max_agents = 8;
  for (int round = 0; round < 10; ++round) {
    Instance inst = testing::random_instance(rng, shape);
    const Network& g = inst.net.graph();
    SigmaStar sigma(g);
    AuditOptions opts;
    opts.exhaustive = false;
    opts.samples = 30;
    opts.seed = round;
    const AuditResult r = one_deviation_audit(g, inst.initial, sigma, opts);
    CHECK(r.passed);
    CHECK(r.nodes > 0);
  }
}

TEST_CASE("lowest-priority routing is not an SPE") {
  NetworkSpec s;
  s.origin = "o";
  s.destination = "d";
  s.edges = {{"a", "o", "d", 1, 1}, {"b", "o", "d", 1, 1}};
  s.priorities = {{"d", {"a", "b"}}};
  Instance inst = build_extended(normalize_to_unit(Network(s)), {{1, {"x", "y"}}});
  const Network& g = inst.net.graph();
  LowestPriorityOracle lp(g);
  const AuditResult r = one_deviation_audit(g, inst.initial, lp);
  CHECK_FALSE(r.passed);
  REQUIRE(r.witness);
  CHECK(r.witness->deviation_exit < r.witness->prescribed_exit);
}

TEST_CASE("NE-based strategies induce the NE and pass the audit") {
  Rng rng(5);
  const testing::RandomShape shape = tiny_shape();
  int nes = 0;
  for (int round = 0; round < 60; ++round) {
    Instance inst = testing::random_instance(rng, shape);
    const Network& g = inst.net.graph();
    std::vector<PathProfile> all;
    try {
      all = enumerate_all_ne(g, inst.initial, 5000);
    } catch (const Error&) {
      continue;
    }
    for (std::size_t k = 0; k < all.size() && k < 2; ++k) {
      ++nes;
      NeBasedSpe spe(g, inst.initial, all[k]);
      INFO("round " << round << " ne " << k);
      CHECK(induced_paths(g, spe, root_history(inst.initial)) == all[k]);
      CHECK(one_deviation_audit(g, inst.initial, spe, bounded_audit()).passed);
    }
  }
  CHECK(nes >= 60);
}

TEST_CASE("after a deviation the leading obedient batches keep their paths") {
  Rng rng(77);
  testing::RandomShape shape;
  shape.max_agents = 5;
  int checked = 0;
  for (int round = 0; round < 200; ++round) {
    Instance inst = testing::random_instance(rng, shape);
    const Network& g = inst.net.graph();
    const Configuration& c = inst.initial;
    const PathProfile ne = iterative_dominating_profile(g, c).paths;
    const auto batches = batch_decompose(g, c, ne);
    const ActionProfile prescribed = actions_from_paths(g, c, ne);
    for (std::size_t b = 0; b < batches.size(); ++b) {
      for (AgentId dev : batches[b].members) {
        for (const Action& alt : action_set(g, c, dev)) {
          if (alt == prescribed[dev.idx()]) continue;
          NeBasedSpe spe(g, c, ne);
          ActionProfile joint = prescribed;
          joint[dev.idx()] = alt;
          const History h = extend(root_history(c), g, joint);
          if (h->config.num_present() == 0) continue;
          const PathProfile& next = spe.profile_at(h);
          INFO("round " << round);
          for (std::size_t x = 0; x < b; ++x) {
            for (AgentId a : batches[x].members) {
              if (!h->config.present(a)) continue;
              CHECK(next[a.idx()] == advance_path(ne[a.idx()], prescribed[a.idx()]));
            }
          }
          CHECK(verify_ne(g, h->config, next).is_ne);
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("sigma-star trace properties") {
  Rng rng(3);
  testing::RandomShape shape;
  int applicable = 0;
  for (int round = 0; round < 40; ++round) {
    Instance inst = testing::random_instance(rng, shape);
    const PropertyReport rep = check_sigma_star_properties(inst, 10, round);
    INFO("round " << round);
    for (const PropertyCheck& chk : rep.checks) {
      CHECK_MESSAGE(chk.holds, chk.name << ": " << (chk.witness ? chk.witness->detail : ""));
      applicable += chk.applicable;
    }
  }
  CHECK(applicable > 100);
}

}  // namespace
}  // namespace dqgame
