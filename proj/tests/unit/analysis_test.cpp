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
#include <sstream>

#include "doctest.h"
#include "dqgame/analysis/analysis.hpp"
#include "support/instances.hpp"

namespace dqgame {
namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

Network make(std::vector<EdgeSpec> edges, std::map<std::string, std::vector<std::string>> prio) {
  NetworkSpec s;
  s.origin = "o";
  s.destination = "d";
  s.edges = std::move(edges);
  s.priorities = std::move(prio);
  return Network(s);
}

Network diamond() {
  return make({{"ou", "o", "u", 1, 1}, {"ov", "o", "v", 1, 2}, {"ud", "u", "d", 1, 2},
               {"vd", "v", "d", 1, 1}},
              {{"d", {"ud", "vd"}}});
}

TEST_CASE("constant inflow and windows") {
  const InflowSchedule s = constant_inflow(2, 3);
  REQUIRE(s.size() == 3);
  CHECK(s[0].time == 1);
  CHECK(s[2].agents == std::vector<std::string>{"a3_0", "a3_1"});
  CHECK(constant_inflow(0, 5).empty());
  CHECK(stabilization_window(1000) == 500);
  CHECK(stabilization_window(100) == 200);
}

TEST_CASE("a path network has constant latency and no queues") {
  const Network path = make({{"oa", "o", "a", 1, 2}, {"ab", "a", "b", 1, 3}, {"bd", "b", "d", 1, 1}},
                            {});
  const BoundReport r = queue_bound_experiment(path, constant_inflow(1, 400), 400);
  CHECK(r.agents == 400);
  CHECK(r.max_queue_overall == 1);  // the agent on the edge, nobody waiting
  CHECK(r.max_latency == 6);
  for (Time l : r.latency) CHECK(l == 6);
  CHECK(r.bounded);
  CHECK(r.latency_bounded);
  CHECK(r.conservation);
  CHECK(r.max_occupancy == 6);
}

TEST_CASE("diamond occupancy stabilizes") {
  const BoundReport r = queue_bound_experiment(diamond(), constant_inflow(2, 1000), 1000);
  CHECK(r.agents == 2000);
  CHECK(r.bounded);
  CHECK(r.latency_bounded);
  CHECK(r.conservation);
  CHECK(r.observation_arrivals);
  CHECK(r.cut_drain);
  CHECK(r.stabilization + r.window <= r.horizon);
  for (const RatioVerdict& v : r.ratio) CHECK(v.holds);
  const OccupancyTrace& occ = r.occupancy;
  for (Time t = 1; t <= occ.horizon; ++t) {
    CHECK(occ.total[t] - occ.total[t - 1] == occ.entrants[t] - occ.exiters[t]);
  }
  std::ostringstream lat, occ_out;
  write_latency_tsv(lat, r);
  write_occupancy_tsv(occ_out, occ);
  CHECK(lat.str().rfind("agent\tentry\tlatency\na1_0\t1\t", 0) == 0);
  CHECK(occ_out.str().rfind("time\tin_network\tentrants\texiters\tmax_queue\n0\t0\t", 0) == 0);
}

TEST_CASE("sigma-star bound matches the NE bound on an inflow start") {
  const BoundReport a = queue_bound_experiment(diamond(), constant_inflow(2, 300), 300);
  const BoundReport b = spe_bound_experiment(diamond(), constant_inflow(2, 300), 300);
  CHECK(a.latency == b.latency);
  CHECK(a.max_queue == b.max_queue);
}

TEST_CASE("no inflow") {
  const BoundReport r = queue_bound_experiment(diamond(), {}, 100);
  CHECK(r.agents == 0);
  CHECK(r.bounded);
  CHECK(r.max_occupancy == 0);
}

TEST_CASE("precondition errors") {
  const Network wheatstone =
      make({{"ou", "o", "u", 1, 1}, {"ov", "o", "v", 1, 1}, {"uv", "u", "v", 1, 1},
            {"ud", "u", "d", 1, 1}, {"vd", "v", "d", 1, 1}},
           {{"v", {"ov", "uv"}}, {"d", {"ud", "vd"}}});
  CHECK(code_of([&] { queue_bound_experiment(wheatstone, constant_inflow(1, 10), 10); }) ==
        ErrorCode::kNotSeriesParallel);
  CHECK(code_of([&] { queue_bound_experiment(diamond(), constant_inflow(3, 10), 10); }) ==
        ErrorCode::kInflowExceedsCut);
  const Network merge = make({{"a", "o", "u", 1, 1}, {"b", "o", "u", 1, 1}, {"ud", "u", "d", 1, 1}},
                             {{"u", {"a", "b"}}});
  CHECK_FALSE(degree_condition_holds(merge));
  CHECK(degree_condition_holds(diamond()));
  CHECK(code_of([&] { spe_bound_experiment(merge, constant_inflow(1, 10), 10); }) ==
        ErrorCode::kDegreeConditionViolated);
  CHECK(code_of([&] { spe_bound_experiment(diamond(), constant_inflow(3, 10), 10); }) ==
        ErrorCode::kInflowExceedsCut);
}

TEST_CASE("random series-parallel networks stay bounded under admissible inflow") {
  testing::Rng rng(17);
  int runs = 0;
  for (int round = 0; round < 25; ++round) {
    const NetworkSpec spec = testing::random_sp_spec(rng, 10);
    const Network net(spec);
    const SPDecomposition dec = require_series_parallel(normalize_to_unit(net).net);
    const int width = static_cast<int>(dec.nodes[dec.root].cut.edges.size());
    INFO("round " << round << " width " << width);
    const BoundReport r = queue_bound_experiment(net, constant_inflow(width, 500), 500);
    CHECK(r.conservation);
    CHECK(r.observation_arrivals);
    CHECK(r.cut_drain);
    for (const RatioVerdict& v : r.ratio) CHECK(v.holds);
    CHECK(r.bounded);
    ++runs;
  }
  CHECK(runs == 25);
}

}  // namespace
}  // namespace dqgame
