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

#include <functional>
#include <optional>
#include <random>

#include "doctest.h"
#include "dqgame/equilibrium/equilibrium.hpp"
#include "support/instances.hpp"

namespace dqgame {
namespace {

using testing::random_interim;
using testing::Rng;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST_CASE("dominating profile is an NE and satisfies the domination inequality") {
  Rng rng(2024);
  testing::RandomShape shape;
  int checked = 0;
  for (int round = 0; round < 300; ++round) {
    Instance inst = testing::random_instance(rng, shape);
    const Network& g = inst.net.graph();
    const Configuration c =
        round % 2 ? random_interim(inst, rng, 1 + static_cast<int>(rng() % 3)) : inst.initial;
    if (c.num_present() == 0) continue;
    const DominatingProfile dom = iterative_dominating_profile(g, c);
    INFO("round " << round);
    CHECK(dom.order.size() == c.num_present());
    CHECK(verify_ne(g, c, dom.paths).is_ne);
    const auto w = check_domination_inequality(g, c, dom, 20, round);
    CHECK_MESSAGE(!w, (w ? w->detail : std::string()));
    ++checked;
  }
  CHECK(checked > 250);
}

TEST_CASE("dominating profile keeps base paths fixed") {
  Rng rng(8);
  testing::RandomShape shape;
  for (int round = 0; round < 100; ++round) {
    Instance inst = testing::random_instance(rng, shape);
    const Network& g = inst.net.graph();
    const DominatingProfile full = iterative_dominating_profile(g, inst.initial);
    // A prefix of the assignment order is a valid base.
    const std::size_t k = rng() % (full.order.size() + 1);
    PathProfile base(inst.num_agents());
    for (std::size_t i = 0; i < k; ++i) base[full.order[i].idx()] = full.paths[full.order[i].idx()];
    DominatingOptions opts;
    opts.base = &base;
    const DominatingProfile again = iterative_dominating_profile(g, inst.initial, opts);
    INFO("round " << round);
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(again.paths[full.order[i].idx()] == full.paths[full.order[i].idx()]);
    }
    CHECK(verify_ne(g, inst.initial, again.paths).is_ne);
  }
}

TEST_CASE("base paths that depend on other agents are rejected") {
  NetworkSpec s;
  s.origin = "o";
  s.destination = "d";
  s.edges = {{"ou", "o", "u", 1, 1}, {"uv", "u", "v", 1, 1}, {"ox", "o", "x", 1, 1},
             {"xv", "x", "v", 1, 1}, {"va", "v", "a", 1, 1}, {"vb", "v", "b", 1, 1},
             {"ad", "a", "d", 1, 1}, {"bd", "b", "d", 1, 1}};
  s.priorities = {{"v", {"uv", "xv"}}, {"d", {"ad", "bd"}}};
  Instance inst = build_configured(normalize_to_unit(Network(s)), 0, {{"uv", {"p"}}, {"xv", {"q"}}});
  const Network& g = inst.net.graph();
  PathProfile base(2);
  base[1] = {*g.find_edge("xv"), *g.find_edge("va"), *g.find_edge("ad")};
  DominatingOptions opts;
  opts.base = &base;
  opts.base_check_samples = 32;
  CHECK(code_of([&] { iterative_dominating_profile(g, inst.initial, opts); }) ==
        ErrorCode::kBaseInvarianceViolated);
}

TEST_CASE("batches group agents by exit time") {
  NetworkSpec s;
  s.origin = "o";
  s.destination = "d";
  s.edges = {{"a", "o", "d", 1, 1}, {"b", "o", "d", 1, 1}};
  s.priorities = {{"d", {"a", "b"}}};
  Instance inst = build_configured(normalize_to_unit(Network(s)), 0, {{"a", {"x", "y"}}, {"b", {"z"}}});
  const PathProfile p{{EdgeId(0)}, {EdgeId(0)}, {EdgeId(1)}};
  const auto batches = batch_decompose(inst.net.graph(), inst.initial, p);
  REQUIRE(batches.size() == 2);
  CHECK(batches[0].time == 1);
  CHECK(batches[0].members == std::vector<AgentId>{AgentId(0), AgentId(2)});
  CHECK(batches[1].members == std::vector<AgentId>{AgentId(1)});
}

TEST_CASE("enumeration of NEs") {
  SUBCASE("single agent: exactly the minimum-latency paths") {
    NetworkSpec s;
    s.origin = "o";
    s.destination = "d";
    s.edges = {{"a", "o", "d", 1, 1}, {"b", "o", "d", 1, 1}, {"ov", "o", "v", 1, 1},
               {"vd", "v", "d", 1, 1}};
    s.priorities = {{"d", {"a", "b", "vd"}}};
    Instance inst = build_extended(normalize_to_unit(Network(s)), {{1, {"x"}}});
    const auto nes = enumerate_all_ne(inst.net.graph(), inst.initial);
    CHECK(nes.size() == 2);
  }
  SUBCASE("every enumerated NE passes verify_ne; non-NEs fail it") {
    Rng rng(31);
    testing::RandomShape shape;
    shape.max_agents = 4;
    for (int round = 0; round < 60; ++round) {
      Instance inst = testing::random_instance(rng, shape);
      const Network& g = inst.net.graph();
      std::optional<ProfileTable> table;
      try {
        table.emplace(g, inst.initial, 20000);
      } catch (const Error&) {
        continue;
      }
      for (std::size_t i = 0; i < table->size(); ++i) {
        CHECK(table->is_ne(i) == verify_ne(g, inst.initial, table->profile(i)).is_ne);
      }
    }
  }
  SUBCASE("guard") {
    NetworkSpec s;
    s.origin = "o";
    s.destination = "d";
    s.edges = {{"a", "o", "d", 1, 1}, {"b", "o", "d", 1, 1}};
    s.priorities = {{"d", {"a", "b"}}};
    Instance inst = build_extended(normalize_to_unit(Network(s)), {{1, {"x", "y"}}});
    CHECK(enumerate_all_ne(inst.net.graph(), inst.initial, 4).size() == 2);
    CHECK(code_of([&] { enumerate_all_ne(inst.net.graph(), inst.initial, 3); }) ==
          ErrorCode::kTooManyProfiles);
  }
}

TEST_CASE("every NE of tiny games has the universal properties") {
  Rng rng(404);
  testing::RandomShape shape;
  shape.max_agents = 4;
  std::size_t nes_checked = 0;
  for (int round = 0; round < 80; ++round) {
    Instance inst = testing::random_instance(rng, shape);
    const Network& g = inst.net.graph();
    const Configuration c =
        round % 2 ? random_interim(inst, rng, 1 + static_cast<int>(rng() % 2)) : inst.initial;
    if (c.num_present() == 0) continue;
    std::vector<PathProfile> nes;
    try {
      nes = enumerate_all_ne(g, c, 3000);
    } catch (const Error&) {
      continue;
    }
    INFO("round " << round);
    CHECK_FALSE(nes.empty());
    PropertyOptions opts;
    opts.exhaustive = true;
    opts.guard = 3000;
    opts.seed = round;
    for (const PathProfile& p : nes) {
      ++nes_checked;
      const PropertyReport rep = check_properties(inst, c, p, opts);
      for (const PropertyCheck& chk : rep.checks) {
        CHECK_MESSAGE(chk.holds, chk.name << ": " << (chk.witness ? chk.witness->detail : ""));
      }
      // No later-batch agent dominates an earlier-batch agent on its path.
      const RoutingTrace tr = run_paths(g, c, p);
      const auto batches = batch_decompose(tr);
      for (std::size_t x = 0; x < batches.size(); ++x) {
        for (std::size_t y = x + 1; y < batches.size(); ++y) {
          for (AgentId early : batches[x].members) {
            for (AgentId late : batches[y].members) {
              const AgentTrace& et = tr[early];
              for (std::size_t k = 1; k < et.vertices.size(); ++k) {
                CHECK_FALSE(dominates(g, c, p, late, early, et.vertices[k]));
              }
            }
          }
        }
      }
    }
  }
  CHECK(nes_checked > 200);
}

TEST_CASE("weak preemption") {
  NetworkSpec s;
  s.origin = "o";
  s.destination = "d";
  s.edges = {{"a", "o", "v", 1, 1}, {"b", "o", "v", 1, 1}, {"vd", "v", "d", 1, 1}};
  s.priorities = {{"v", {"a", "b"}}};
  Instance inst = build_configured(normalize_to_unit(Network(s)), 0, {{"a", {"x"}}, {"b", {"y"}}});
  const Network& g = inst.net.graph();
  const PathProfile p{{EdgeId(0), EdgeId(2)}, {EdgeId(1), EdgeId(2)}};
  const RoutingTrace tr = run_paths(g, inst.initial, p);
  const VertexId v = *g.find_vertex("v");
  const VertexId d = g.destination();
  CHECK(weakly_preempts(g, tr[AgentId(0)], tr[AgentId(1)], v));
  CHECK_FALSE(weakly_preempts(g, tr[AgentId(1)], tr[AgentId(0)], v));
  CHECK(weakly_preempts(g, tr[AgentId(0)], tr[AgentId(1)], d));
  // Start vertices are not compared.
  CHECK_FALSE(weakly_preempts(g, tr[AgentId(0)], tr[AgentId(1)], g.origin()));
}

}  // namespace
}  // namespace dqgame
