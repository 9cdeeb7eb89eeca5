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
#include <map>
#include <tuple>
#include <sstream>

#include "doctest.h"
#include "dqgame/dynamics/dynamics.hpp"
#include "support/instances.hpp"

namespace dqgame {
namespace {

using testing::Rng;

// o -> u -> v, v -> a -> d, v -> b -> d, plus x -> v for priority tests.
struct Small {
  UnitNetwork unit;
  Small() {
    NetworkSpec s;
    s.origin = "o";
    s.destination = "d";
    s.edges = {{"ou", "o", "u", 1, 1}, {"uv", "u", "v", 1, 1}, {"ox", "o", "x", 1, 1},
               {"xv", "x", "v", 1, 1}, {"va", "v", "a", 1, 1}, {"vb", "v", "b", 1, 1},
               {"ad", "a", "d", 1, 1}, {"bd", "b", "d", 1, 1}};
    s.priorities = {{"v", {"uv", "xv"}}, {"d", {"ad", "bd"}}};
    unit = normalize_to_unit(Network(s));
  }
  EdgeId e(const char* name) const { return *unit.net.find_edge(name); }
};

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST_CASE("action sets") {
  Small s;
  Instance inst = build_configured(s.unit, 0, {{"uv", {"p", "q"}}, {"ad", {"r"}}});
  const Network& g = inst.net.graph();
  const AgentId p = *inst.find_agent("p"), q = *inst.find_agent("q"), r = *inst.find_agent("r");
  CHECK(action_set(g, inst.initial, r) == std::vector<Action>{Action::exit()});
  CHECK(action_set(g, inst.initial, q) == std::vector<Action>{Action::stay()});
  CHECK(action_set(g, inst.initial, p) ==
        std::vector<Action>{Action::move(s.e("va")), Action::move(s.e("vb"))});
  Configuration gone = inst.initial.restricted({true, false, true});
  CHECK(code_of([&] { action_set(g, gone, q); }) == ErrorCode::kUnknownAgent);
}

TEST_CASE("single steps") {
  Small s;
  SUBCASE("head moves on, second becomes head") {
    Instance inst = build_configured(s.unit, 0, {{"uv", {"p", "q"}}});
    const Network& g = inst.net.graph();
    Configuration next = step(g, inst.initial, {Action::move(s.e("va")), Action::stay()});
    CHECK(next.time() == 1);
    CHECK(next.queue(s.e("uv")) == std::vector<AgentId>{AgentId(1)});
    CHECK(next.queue(s.e("va")) == std::vector<AgentId>{AgentId(0)});
  }
  SUBCASE("simultaneous entrants ordered by the priority of their edges") {
    // x arrives from xv, y from uv; uv has the higher priority at v.
    Instance inst = build_configured(s.unit, 0, {{"xv", {"x"}}, {"uv", {"y"}}});
    const Network& g = inst.net.graph();
    Configuration next = step(g, inst.initial, {Action::move(s.e("va")), Action::move(s.e("va"))});
    CHECK(next.queue(s.e("va")) ==
          std::vector<AgentId>{*inst.find_agent("y"), *inst.find_agent("x")});
  }
  SUBCASE("agents behind the head keep their order") {
    Instance inst = build_configured(s.unit, 3, {{"uv", {"p", "q"}}, {"ou", {"r", "t"}}});
    const Network& g = inst.net.graph();
    // Heads always act; r merges into uv behind q.
    Configuration next = step(g, inst.initial,
                              {Action::move(s.e("va")), Action::stay(), Action::move(s.e("uv")),
                               Action::stay()});
    CHECK(next.queue(s.e("ou")) == std::vector<AgentId>{*inst.find_agent("t")});
    CHECK(next.queue(s.e("uv")) ==
          std::vector<AgentId>{*inst.find_agent("q"), *inst.find_agent("r")});
  }
  SUBCASE("invalid actions are rejected") {
    Instance inst = build_configured(s.unit, 0, {{"uv", {"p", "q"}}});
    const Network& g = inst.net.graph();
    CHECK(code_of([&] { step(g, inst.initial, {Action::stay(), Action::stay()}); }) ==
          ErrorCode::kInvalidAction);
    CHECK(code_of([&] {
            step(g, inst.initial, {Action::move(s.e("va")), Action::move(s.e("vb"))});
          }) == ErrorCode::kInvalidAction);
    CHECK(code_of([&] { step(g, inst.initial, {Action::move(s.e("ad")), Action::stay()}); }) ==
          ErrorCode::kInvalidAction);
  }
  SUBCASE("exiting removes the agent") {
    Instance inst = build_configured(s.unit, 0, {{"ad", {"p"}}});
    Configuration next = step(inst.net.graph(), inst.initial, {Action::exit()});
    CHECK(next.num_present() == 0);
  }
}

TEST_CASE("run_paths examples") {
  NetworkSpec spec;
  spec.origin = "o";
  spec.destination = "d";
  spec.edges = {{"od", "o", "d", 1, 1}};
  UnitNetwork u = normalize_to_unit(Network(spec));
  SUBCASE("one agent on one edge") {
    Instance inst = build_configured(u, 4, {{"od", {"a"}}});
    RoutingTrace tr = run_paths(inst.net.graph(), inst.initial, {{EdgeId(0)}});
    CHECK(tr.exit_time(AgentId(0)) == 5);
  }
  SUBCASE("two agents share the edge") {
    Instance inst = build_configured(u, 4, {{"od", {"a", "b"}}});
    RoutingTrace tr = run_paths(inst.net.graph(), inst.initial, {{EdgeId(0)}, {EdgeId(0)}});
    CHECK(tr.exit_time(AgentId(0)) == 5);
    CHECK(tr.exit_time(AgentId(1)) == 6);
  }
  SUBCASE("path not starting at the current edge") {
    Small s;
    Instance inst = build_configured(s.unit, 0, {{"uv", {"p"}}});
    CHECK(code_of([&] {
            run_paths(inst.net.graph(), inst.initial, {{s.e("va"), s.e("ad")}});
          }) == ErrorCode::kPathNotFromCurrentEdge);
  }
}

TEST_CASE("simulation properties on random instances") {
  Rng rng(41);
  testing::RandomShape shape;
  shape.max_agents = 8;
  for (int round = 0; round < 300; ++round) {
    Instance inst = testing::random_instance(rng, shape);
    const Network& g = inst.net.graph();
    const PathProfile prof = testing::random_profile(inst, inst.initial, rng);
    RunOptions ro;
    ro.record_queues = true;
    const RoutingTrace a = run_paths(g, inst.initial, prof, ro);
    const RoutingTrace b = run_paths(g, inst.initial, prof, ro);
    INFO("round " << round);

    // Determinism.
    for (std::size_t i = 0; i < inst.num_agents(); ++i) {
      CHECK(a.agents[i].times == b.agents[i].times);
    }
    // Progress bound.
    const GraphStats& st = g.stats();
    for (const AgentTrace& at : a.agents) {
      CHECK(at.exit_time() <= inst.initial.time() +
                                  static_cast<Time>(inst.num_agents() * st.m + st.longest_path));
    }
    // Stepping with the path actions reproduces the trace and conserves agents.
    Configuration c = inst.initial;
    PathProfile rest = prof;
    std::size_t exited = 0;
    while (c.num_present() > 0) {
      ActionProfile act(inst.num_agents());
      for (AgentId x : c.present_agents()) act[x.idx()] = action_along(g, c, x, rest[x.idx()]);
      Configuration next = step(g, c, act);
      std::size_t leaving = 0;
      for (AgentId x : c.present_agents()) {
        if (act[x.idx()].kind == Action::Kind::kExit) {
          ++leaving;
          CHECK(a.exit_time(x) == c.time() + 1);
        }
        rest[x.idx()] = advance_path(rest[x.idx()], act[x.idx()]);
      }
      exited += leaving;
      CHECK(next.num_present() + leaving == c.num_present());
      c = std::move(next);
    }
    CHECK(exited == inst.num_agents());
    // Local FIFO: on each edge, leaving order follows entering order, with
    // simultaneous entrants ordered by the priority of the edge they came from.
    std::map<EdgeId, std::vector<std::tuple<Time, int, Time>>> by_edge;
    for (const AgentTrace& at : a.agents) {
      for (std::size_t k = 0; k < at.path.size(); ++k) {
        if (k == 0) continue;
        by_edge[at.path[k]].emplace_back(at.times[k], g.rank(at.path[k - 1]), at.times[k + 1]);
      }
    }
    for (auto& [e, list] : by_edge) {
      std::sort(list.begin(), list.end());
      for (std::size_t k = 1; k < list.size(); ++k) {
        CHECK(std::get<2>(list[k - 1]) < std::get<2>(list[k]));
      }
    }
  }
}

TEST_CASE("trace export") {
  NetworkSpec spec;
  spec.origin = "o";
  spec.destination = "d";
  spec.edges = {{"od", "o", "d", 1, 1}};
  UnitNetwork u = normalize_to_unit(Network(spec));
  Instance inst = build_configured(u, 0, {{"od", {"a", "b"}}});
  RunOptions ro;
  ro.record_queues = true;
  RoutingTrace tr = run_paths(inst.net.graph(), inst.initial, {{EdgeId(0)}, {EdgeId(0)}}, ro);
  std::ostringstream t, q;
  write_trace_tsv(t, inst, tr);
  write_queue_tsv(q, inst, tr);
  CHECK(t.str() == "agent\tvertex\ttime\na\to\t0\na\td\t1\nb\to\t0\nb\td\t2\n");
  CHECK(q.str() == "time\tedge\tlength\n0\tod\t2\n1\tod\t1\n");
}

}  // namespace
}  // namespace dqgame
