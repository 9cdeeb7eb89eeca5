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

#include "dqgame/analysis/analysis.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

namespace dqgame {
namespace {

void add_interval(std::vector<int>& diff, Time from, Time to, Time horizon) {
  from = std::max<Time>(from, 0);
  to = std::min<Time>(to, horizon + 1);
  if (from >= to) return;
  ++diff[from];
  --diff[to];
}

std::vector<int> prefix_sum(const std::vector<int>& diff, Time horizon) {
  std::vector<int> out(horizon + 1);
  int run = 0;
  for (Time t = 0; t <= horizon; ++t) out[t] = run += diff[t];
  return out;
}

std::vector<int> sum_edges(const std::vector<std::vector<int>>& queue,
                           const std::vector<EdgeId>& edges, Time horizon) {
  std::vector<int> out(horizon + 1, 0);
  for (EdgeId e : edges) {
    for (Time t = 0; t <= horizon; ++t) out[t] += queue[e.idx()][t];
  }
  return out;
}

void check_inflow_width(const InflowSchedule& schedule, long width) {
  for (const InflowBatch& b : schedule) {
    if (static_cast<long>(b.agents.size()) > width) {
      throw Error(ErrorCode::kInflowExceedsCut,
                  std::to_string(b.agents.size()) + " agents enter at time " +
                      std::to_string(b.time) + " but the minimum cut is " +
                      std::to_string(width));
    }
  }
}

BoundReport finish(const Instance& inst, const RoutingTrace& trace, const SPDecomposition* dec,
                   Time horizon) {
  BoundReport rep;
  rep.horizon = horizon;
  rep.agents = inst.num_agents();
  rep.window = stabilization_window(horizon);
  rep.occupancy = occupancy_trace(inst, trace, dec, horizon);
  const OccupancyTrace& occ = rep.occupancy;
  const Network& unit = inst.net.unit().net;

  rep.max_queue.assign(occ.queue.size(), 0);
  int running_total = 0;
  for (Time t = 0; t <= horizon; ++t) {
    bool grew = false;
    if (occ.total[t] > running_total) {
      running_total = occ.total[t];
      grew = true;
    }
    for (std::size_t e = 0; e < occ.queue.size(); ++e) {
      if (occ.queue[e][t] > rep.max_queue[e]) {
        rep.max_queue[e] = occ.queue[e][t];
        grew = true;
      }
    }
    if (grew) rep.stabilization = t;
    if (t > 0 && occ.total[t] != occ.total[t - 1] + occ.entrants[t] - occ.exiters[t]) {
      rep.conservation = false;
    }
    if (occ.max_arrivals_at_vertex[t] > static_cast<int>(unit.stats().max_indegree)) {
      rep.observation_arrivals = false;
    }
  }
  rep.max_occupancy = running_total;
  rep.max_queue_overall =
      rep.max_queue.empty() ? 0 : *std::max_element(rep.max_queue.begin(), rep.max_queue.end());
  rep.bounded = horizon - rep.stabilization >= rep.window;

  if (dec) {
    rep.ratio = degree_ratio_monitor(occ, *dec, unit.stats());
    // A full cut releases one agent per cut edge in the next step.
    const std::vector<EdgeId>& cut = dec->nodes[dec->root].cut.edges;
    std::vector<std::vector<int>> crossing(cut.size(), std::vector<int>(horizon + 2, 0));
    for (const AgentTrace& at : trace.agents) {
      for (std::size_t k = 0; k + 1 < at.vertices.size(); ++k) {
        auto it = std::find(cut.begin(), cut.end(), at.path[k]);
        if (it != cut.end() && at.times[k + 1] <= horizon + 1) {
          ++crossing[it - cut.begin()][at.times[k + 1]];
        }
      }
    }
    for (Time t = 0; t < horizon; ++t) {
      bool full = true;
      int crossed = 0;
      for (std::size_t c = 0; c < cut.size(); ++c) {
        full = full && occ.queue[cut[c].idx()][t] > 0;
        crossed += crossing[c][t + 1];
      }
      if (full && crossed != static_cast<int>(cut.size())) rep.cut_drain = false;
    }
  }

  std::vector<std::size_t> by_entry;
  for (std::size_t a = 0; a < inst.num_agents(); ++a) {
    rep.names.push_back(inst.agents[a].name);
    rep.entry.push_back(inst.agents[a].entry_time);
    rep.latency.push_back(trace.agents[a].exit_time() - inst.agents[a].entry_time);
    by_entry.push_back(a);
  }
  std::stable_sort(by_entry.begin(), by_entry.end(),
                   [&](std::size_t x, std::size_t y) { return rep.entry[x] < rep.entry[y]; });
  for (std::size_t a : by_entry) {
    if (rep.entry[a] > horizon) break;
    if (rep.latency[a] > rep.max_latency) {
      rep.max_latency = rep.latency[a];
      rep.latency_stabilization = rep.entry[a];
    }
  }
  rep.latency_bounded = horizon - rep.latency_stabilization >= rep.window;
  return rep;
}

BoundReport empty_report(Time horizon) {
  BoundReport rep;
  rep.horizon = horizon;
  rep.window = stabilization_window(horizon);
  rep.bounded = true;
  rep.latency_bounded = true;
  return rep;
}

bool has_agents(const InflowSchedule& schedule) {
  return std::any_of(schedule.begin(), schedule.end(),
                     [](const InflowBatch& b) { return !b.agents.empty(); });
}

}  // namespace

OccupancyTrace occupancy_trace(const Instance& inst, const RoutingTrace& trace,
                               const SPDecomposition* dec, Time horizon) {
  const ExtendedNetwork& xn = inst.net;
  const std::size_t m = xn.num_g_edges();
  OccupancyTrace occ;
  occ.horizon = horizon;
  std::vector<std::vector<int>> diff(m, std::vector<int>(horizon + 2, 0));
  occ.entrants.assign(horizon + 1, 0);
  occ.exiters.assign(horizon + 1, 0);
  occ.max_arrivals_at_vertex.assign(horizon + 1, 0);
  std::vector<std::pair<Time, VertexId>> arrivals;
  for (const AgentTrace& at : trace.agents) {
    if (!at.routed()) continue;
    bool entered = false;
    for (std::size_t k = 0; k < at.path.size(); ++k) {
      const EdgeId e = at.path[k];
      if (!xn.is_g_edge(e)) continue;
      if (!entered) {
        entered = true;
        if (k > 0 && at.times[k] <= horizon) ++occ.entrants[at.times[k]];
      }
      add_interval(diff[e.idx()], at.times[k], at.times[k + 1], horizon);
      if (at.times[k + 1] <= horizon) arrivals.emplace_back(at.times[k + 1], at.vertices[k + 1]);
    }
    if (at.exit_time() <= horizon) ++occ.exiters[at.exit_time()];
  }
  std::sort(arrivals.begin(), arrivals.end());
  for (std::size_t i = 0; i < arrivals.size();) {
    std::size_t j = i;
    while (j < arrivals.size() && arrivals[j] == arrivals[i]) ++j;
    int& slot = occ.max_arrivals_at_vertex[arrivals[i].first];
    slot = std::max(slot, static_cast<int>(j - i));
    i = j;
  }
  occ.queue.reserve(m);
  for (std::size_t e = 0; e < m; ++e) occ.queue.push_back(prefix_sum(diff[e], horizon));
  occ.total.assign(horizon + 1, 0);
  for (std::size_t e = 0; e < m; ++e) {
    for (Time t = 0; t <= horizon; ++t) occ.total[t] += occ.queue[e][t];
  }
  if (dec) {
    for (const SPNode& n : dec->nodes) {
      occ.node.push_back(sum_edges(occ.queue, n.edges, horizon));
      occ.left.push_back(sum_edges(occ.queue, n.cut.left_part, horizon));
      occ.right.push_back(sum_edges(occ.queue, n.cut.right_part, horizon));
    }
  }
  return occ;
}

std::vector<RatioVerdict> degree_ratio_monitor(const OccupancyTrace& trace,
                                               const SPDecomposition& dec,
                                               const GraphStats& stats) {
  const long m = static_cast<long>(stats.m);
  auto bound = [m](long other) { return 2 * m * m * (2 * m + other); };
  std::vector<RatioVerdict> out;
  for (std::size_t n = 0; n < dec.nodes.size(); ++n) {
    const SPNode& node = dec.nodes[n];
    if (node.kind != SPKind::kParallel) continue;
    RatioVerdict v;
    v.node = static_cast<int>(n);
    const auto& a = trace.node[node.left];
    const auto& b = trace.node[node.right];
    double tightest = -1;
    for (Time t = 0; t <= trace.horizon; ++t) {
      ++v.checks;
      const double slack = std::max(static_cast<double>(a[t]) / bound(b[t]),
                                    static_cast<double>(b[t]) / bound(a[t]));
      if (slack > tightest) {
        tightest = slack;
        v.worst_n1 = a[t];
        v.worst_n2 = b[t];
      }
      if ((a[t] > bound(b[t]) || b[t] > bound(a[t])) && v.holds) {
        v.holds = false;
        v.first_violation = t;
      }
    }
    out.push_back(v);
  }
  return out;
}

InflowSchedule constant_inflow(int width, Time horizon) {
  InflowSchedule out;
  if (width <= 0) return out;
  for (Time t = 1; t <= horizon; ++t) {
    InflowBatch b;
    b.time = t;
    for (int k = 0; k < width; ++k) b.agents.push_back("a" + std::to_string(t) + "_" + std::to_string(k));
    out.push_back(std::move(b));
  }
  return out;
}

Time stabilization_window(Time horizon) { return std::max<Time>(horizon / 2, 200); }

bool degree_condition_holds(const Network& net) {
  for (std::size_t v = 0; v < net.num_vertices(); ++v) {
    const VertexId id(v);
    if (id == net.origin() || id == net.destination()) continue;
    if (net.out_edges(id).size() < net.in_edges(id).size()) return false;
  }
  return true;
}

BoundReport queue_bound_experiment(const Network& net, const InflowSchedule& schedule,
                                   Time horizon) {
  const UnitNetwork unit = normalize_to_unit(net);
  const SPDecomposition dec = require_series_parallel(unit.net);
  check_inflow_width(schedule, static_cast<long>(dec.nodes[dec.root].cut.edges.size()));
  if (!has_agents(schedule)) return empty_report(horizon);
  const Instance inst = build_extended(unit, schedule);
  const Network& g = inst.net.graph();
  const DominatingProfile dom = iterative_dominating_profile(g, inst.initial);
  return finish(inst, run_paths(g, inst.initial, dom.paths), &dec, horizon);
}

BoundReport spe_bound_experiment(const Network& net, const InflowSchedule& schedule,
                                 Time horizon) {
  const UnitNetwork unit = normalize_to_unit(net);
  if (!degree_condition_holds(unit.net)) {
    throw Error(ErrorCode::kDegreeConditionViolated,
                "some internal vertex has fewer outgoing than incoming edges");
  }
  std::vector<EdgeId> all;
  for (std::size_t e = 0; e < unit.net.num_edges(); ++e) all.push_back(EdgeId(e));
  check_inflow_width(schedule,
                     max_flow(unit.net, all, unit.net.origin(), unit.net.destination()));
  if (!has_agents(schedule)) return empty_report(horizon);
  const Instance inst = build_extended(unit, schedule);
  const Network& g = inst.net.graph();
  const DominatingProfile dom = iterative_dominating_profile(g, inst.initial);
  const std::optional<SPDecomposition> dec = sp_decompose(unit.net);
  return finish(inst, run_paths(g, inst.initial, dom.paths), dec ? &*dec : nullptr, horizon);
}

void write_occupancy_tsv(std::ostream& out, const OccupancyTrace& trace) {
  out << "time\tin_network\tentrants\texiters\tmax_queue\n";
  for (Time t = 0; t <= trace.horizon; ++t) {
    int q = 0;
    for (const auto& series : trace.queue) q = std::max(q, series[t]);
    out << t << '\t' << trace.total[t] << '\t' << trace.entrants[t] << '\t' << trace.exiters[t]
        << '\t' << q << '\n';
  }
}

void write_latency_tsv(std::ostream& out, const BoundReport& report) {
  out << "agent\tentry\tlatency\n";
  for (std::size_t a = 0; a < report.names.size(); ++a) {
    out << report.names[a] << '\t' << report.entry[a] << '\t' << report.latency[a] << '\n';
  }
}

}  // namespace dqgame
