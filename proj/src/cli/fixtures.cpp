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

#include "dqgame/cli/fixtures.hpp"

namespace dqgame {
namespace {

EdgeSpec edge(const std::string& tail, const std::string& head) {
  return {tail + head, tail, head, 1, 1};
}

Scenario fig1() {
  Scenario s;
  s.name = "fig1";
  NetworkSpec& n = s.network;
  n.origin = "o";
  n.destination = "d";
  for (auto [t, h] : {std::pair{"o", "v"}, {"o", "u1"}, {"o", "u2"}, {"v", "w1"}, {"v", "w2"},
                      {"u1", "w1"}, {"u2", "w2"}, {"w1", "d"}, {"w2", "d"}}) {
    n.edges.push_back(edge(t, h));
  }
  n.priorities = {{"w1", {"vw1", "u1w1"}}, {"w2", {"vw2", "u2w2"}}, {"d", {"w1d", "w2d"}}};
  s.inflow = {{1, {"p1", "p2"}}};
  s.profile = {{"p1", {"ov", "vw1", "w1d"}}, {"p2", {"ou1", "u1w1", "w1d"}}};
  return s;
}

Scenario fig2() {
  Scenario s;
  s.name = "fig2";
  NetworkSpec& n = s.network;
  n.origin = "o";
  n.destination = "d";
  for (auto [t, h] : {std::pair{"o", "oi"}, {"o", "ok"}, {"o", "oj"}, {"oi", "u"}, {"u", "u1"},
                      {"u", "u2"}, {"u1", "v1"}, {"u2", "v2"}, {"ok", "v"}, {"v", "v1"},
                      {"v", "v2"}, {"v1", "y1"}, {"v2", "y2"}, {"oj", "w"}, {"w", "w1"},
                      {"w", "w2"}, {"w1", "x1"}, {"w2", "x2"}, {"x1", "y1"}, {"x2", "y2"},
                      {"y1", "d"}, {"y2", "d"}}) {
    n.edges.push_back(edge(t, h));
  }
  n.priorities = {{"v1", {"u1v1", "vv1"}},
                  {"v2", {"u2v2", "vv2"}},
                  {"y1", {"v1y1", "x1y1"}},
                  {"y2", {"x2y2", "v2y2"}},
                  {"d", {"y2d", "y1d"}}};
  ConfigurationSpec c;
  c.queues = {{"oiu", {"i"}},
              {"okv", {"k"}},
              {"ojw", {"j"}},
              {"v1y1", {"b1", "b2", "b3"}},
              {"v2y2", {"c1", "c2", "c3"}}};
  s.configuration = c;
  return s;
}

Scenario fig3() {
  Scenario s;
  s.name = "fig3";
  NetworkSpec& n = s.network;
  n.origin = "o";
  n.destination = "d";
  for (auto [t, h] : {std::pair{"o", "u1"}, {"o", "v1"}, {"u1", "u2"}, {"u2", "u3"}, {"u3", "u4"},
                      {"u4", "u5"}, {"u5", "d"}, {"u2", "v3"}, {"v1", "v2"}, {"v2", "v3"},
                      {"v3", "v4"}, {"v4", "d"}, {"v4", "v5"}, {"v5", "d"}}) {
    n.edges.push_back(edge(t, h));
  }
  n.priorities = {{"v3", {"u2v3", "v2v3"}}, {"d", {"u5d", "v4d", "v5d"}}};
  ConfigurationSpec c;
  c.queues = {{"u1u2", {"k", "i"}},
              {"v1v2", {"j"}},
              {"v4d", {"b1", "b2", "b3", "b4"}},
              {"v5d", {"c1", "c2", "c3"}}};
  s.configuration = c;
  s.profile = {{"k", {"u1u2", "u2u3", "u3u4", "u4u5", "u5d"}},
               {"i", {"u1u2", "u2v3", "v3v4", "v4d"}},
               {"j", {"v1v2", "v2v3", "v3v4", "v4v5", "v5d"}}};
  for (const char* b : {"b1", "b2", "b3", "b4"}) s.profile.push_back({b, {"v4d"}});
  for (const char* b : {"c1", "c2", "c3"}) s.profile.push_back({b, {"v5d"}});
  return s;
}

}  // namespace

std::vector<std::string> fixture_names() { return {"fig1", "fig2", "fig3"}; }

std::optional<Scenario> fixture(const std::string& name) {
  if (name == "fig1") return fig1();
  if (name == "fig2") return fig2();
  if (name == "fig3") return fig3();
  return std::nullopt;
}

ViciousOracle::ViciousOracle(const Instance& inst) : inst_(inst), sigma_(inst.net.graph()) {
  const Network& g = inst.net.graph();
  auto agent = [&](const char* n) {
    auto a = inst.find_agent(n);
    if (!a) throw Error(ErrorCode::kUnknownAgent, std::string("fixture agent '") + n + "' missing");
    return *a;
  };
  auto edge_id = [&](const char* n) {
    auto e = g.find_edge(n);
    if (!e) throw Error(ErrorCode::kUnresolvedReference, std::string("fixture edge '") + n + "' missing");
    return *e;
  };
  p1_ = agent("p1");
  p2_ = agent("p2");
  ov_ = edge_id("ov");
  ou1_ = edge_id("ou1");
  vw1_ = edge_id("vw1");
  vw2_ = edge_id("vw2");
}

ActionProfile ViciousOracle::actions(const History& h) {
  const Network& g = inst_.net.graph();
  const Configuration& c = h->config;
  ActionProfile out = sigma_.actions(h);
  auto at_head = [&](AgentId a) -> std::optional<EdgeId> {
    const auto& loc = c.locate(a);
    if (!loc || loc->position != 0) return std::nullopt;
    return loc->edge;
  };
  if (auto e = at_head(p1_)) {
    if (g.head(*e) == inst_.net.g_origin()) {
      out[p1_.idx()] = Action::move(ov_);
    } else if (*e == ov_) {
      const auto& other = c.locate(p2_);
      const bool on_u1 = other && other->edge == ou1_;
      out[p1_.idx()] = Action::move(on_u1 ? vw1_ : vw2_);
    }
  }
  if (auto e = at_head(p2_)) {
    if (g.head(*e) == inst_.net.g_origin()) out[p2_.idx()] = Action::move(ou1_);
  }
  return out;
}

}  // namespace dqgame
