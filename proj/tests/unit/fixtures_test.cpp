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

#include "doctest.h"
#include "dqgame/cli/fixtures.hpp"

namespace dqgame {
namespace {

struct Loaded {
  LoadedScenario l;
  explicit Loaded(const char* name) : l(instantiate(*fixture(name))) {}
  const Network& g() const { return l.graph(); }
  const Configuration& c() const { return l.instance.initial; }
  AgentId agent(const char* n) const { return *l.instance.find_agent(n); }
};

TEST_CASE("fig1: NEs, the given profile and the vicious SPE") {
  const Loaded f("fig1");
  const auto nes = enumerate_all_ne(f.g(), f.c());
  CHECK(nes.size() == 6);
  for (const PathProfile& p : nes) {
    const RoutingTrace t = run_paths(f.g(), f.c(), p);
    // Agents reach o at time 1, so cost is exit - 1.
    CHECK(t.exit_time(f.agent("p1")) == 4);
    CHECK(t.exit_time(f.agent("p2")) == 4);
  }
  const RoutingTrace given = run_paths(f.g(), f.c(), f.l.profile);
  CHECK(given.exit_time(f.agent("p1")) == 4);
  CHECK(given.exit_time(f.agent("p2")) == 5);
  const NeVerdict v = verify_ne(f.g(), f.c(), f.l.profile);
  CHECK_FALSE(v.is_ne);
  REQUIRE(v.witness);
  CHECK(v.witness->agent == f.agent("p2"));

  ViciousOracle vicious(f.l.instance);
  const AuditResult r = one_deviation_audit(f.g(), f.c(), vicious);
  CHECK(r.passed);
  CHECK_FALSE(r.truncated);
  CHECK(induced_paths(f.g(), vicious, root_history(f.c())) == f.l.profile);

  SigmaStar sigma(f.g());
  CHECK(one_deviation_audit(f.g(), f.c(), sigma).passed);
  LowestPriorityOracle lp(f.g());
  CHECK_FALSE(one_deviation_audit(f.g(), f.c(), lp).passed);
}

TEST_CASE("fig1: a deviation inside the first batch rebuilds everything") {
  const Loaded f("fig1");
  for (const PathProfile& ne : enumerate_all_ne(f.g(), f.c())) {
    const ActionProfile prescribed = actions_from_paths(f.g(), f.c(), ne);
    for (AgentId dev : f.c().present_agents()) {
      for (const Action& alt : action_set(f.g(), f.c(), dev)) {
        if (alt == prescribed[dev.idx()]) continue;
        NeBasedSpe spe(f.g(), f.c(), ne);
        ActionProfile joint = prescribed;
        joint[dev.idx()] = alt;
        const History h = extend(root_history(f.c()), f.g(), joint);
        CHECK(spe.profile_at(h) == iterative_dominating_profile(f.g(), h->config).paths);
      }
    }
  }
}

TEST_CASE("fig2: the dominating profile in the listed order") {
  const Loaded f("fig2");
  const DominatingProfile dom = iterative_dominating_profile(f.g(), f.c());
  const std::vector<std::string> want = {
      "v2y2 y2d", "v1y1 y1d", "v2y2 y2d", "v1y1 y1d", "v2y2 y2d", "v1y1 y1d",
      "ojw ww2 w2x2 x2y2 y2d", "okv vv1 v1y1 y1d", "oiu uu2 u2v2 v2y2 y2d"};
  REQUIRE(dom.order.size() == want.size());
  for (std::size_t k = 0; k < want.size(); ++k) {
    CHECK(path_to_string(f.l.instance, dom.paths[dom.order[k].idx()], true) == want[k]);
  }
  CHECK(verify_ne(f.g(), f.c(), dom.paths).is_ne);
  // k's and j's choices from the text form an NE together with any path of i.
  const AgentId i = f.agent("i");
  for (const Path& pi : enumerate_paths(f.g(), f.c().locate(i)->edge, 1000)) {
    PathProfile p = dom.paths;
    p[i.idx()] = pi;
    CHECK(verify_ne(f.g(), f.c(), p).is_ne);
  }
}

TEST_CASE("fig3: removing an agent delays another") {
  const Loaded f("fig3");
  const Time r = f.c().time();
  const RoutingTrace t = run_paths(f.g(), f.c(), f.l.profile);
  CHECK(verify_ne(f.g(), f.c(), f.l.profile).is_ne);
  for (const char* n : {"i", "j", "k"}) CHECK(t.exit_time(f.agent(n)) == r + 5);

  std::vector<bool> keep(f.l.instance.num_agents(), true);
  keep[f.agent("k").idx()] = false;
  const Configuration ck = f.c().restricted(keep);
  PathProfile p = f.l.profile;
  p[f.agent("k").idx()].clear();
  const RoutingTrace tk = run_paths(f.g(), ck, p);
  CHECK(verify_ne(f.g(), ck, p).is_ne);
  CHECK(tk.exit_time(f.agent("i")) == r + 5);
  CHECK(tk.exit_time(f.agent("j")) == r + 6);
}

}  // namespace
}  // namespace dqgame
