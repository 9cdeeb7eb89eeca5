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

#ifndef DQGAME_ANALYSIS_ANALYSIS_HPP_
#define DQGAME_ANALYSIS_ANALYSIS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "dqgame/equilibrium/equilibrium.hpp"
#include "dqgame/netcore/series_parallel.hpp"

namespace dqgame {

// Agents inside G (on unit edges) over time 0..T. Node-level series are
// indexed like SPDecomposition::nodes; left/right are the node's G^l and G^r,
// with the cut edges counted on the left.
struct OccupancyTrace {
  Time horizon = 0;
  std::vector<int> total;                  // [t]
  std::vector<int> entrants;               // [t]: agents entering G in the step ending at t
  std::vector<int> exiters;                // [t]: agents reaching d at t
  std::vector<std::vector<int>> node;      // [node][t]
  std::vector<std::vector<int>> left;      // [node][t]
  std::vector<std::vector<int>> right;     // [node][t]
  std::vector<std::vector<int>> queue;     // [unit edge][t]
  std::vector<int> max_arrivals_at_vertex; // [t]: most agents reaching one vertex at t
};

// `dec` may be null, in which case only the network-level series are filled.
OccupancyTrace occupancy_trace(const Instance& inst, const RoutingTrace& trace,
                               const SPDecomposition* dec, Time horizon);

struct RatioVerdict {
  int node = -1;
  bool holds = true;
  std::size_t checks = 0;
  Time first_violation = kNever;
  int worst_n1 = 0;  // occupancies at the tightest step
  int worst_n2 = 0;
};

// n1 <= 2 m^2 (2 m + n2) and symmetrically at every parallel node and step,
// with m the edge count of the whole unit network.
std::vector<RatioVerdict> degree_ratio_monitor(const OccupancyTrace& trace,
                                               const SPDecomposition& dec,
                                               const GraphStats& stats);

struct BoundReport {
  Time horizon = 0;
  std::size_t agents = 0;
  int max_occupancy = 0;
  std::vector<int> max_queue;  // per unit edge
  int max_queue_overall = 0;
  Time stabilization = 0;      // last step at which a running maximum grew
  bool bounded = false;        // maxima unchanged over the final window
  Time window = 0;
  Time max_latency = 0;
  Time latency_stabilization = 0;  // last entry time whose latency set a new maximum
  bool latency_bounded = false;
  bool conservation = true;
  bool observation_arrivals = true;  // at most Lambda agents reach a vertex at once
  bool cut_drain = true;             // a full cut releases |cut| agents next step
  std::vector<RatioVerdict> ratio;
  OccupancyTrace occupancy;
  std::vector<std::string> names;  // per agent
  std::vector<Time> entry;         // per agent
  std::vector<Time> latency;       // per agent
};

// Width-w inflow for times 1..T, agent names "a<t>_<k>".
InflowSchedule constant_inflow(int width, Time horizon);

// Stabilisation window for a horizon: max(T/2, 200).
Time stabilization_window(Time horizon);

// Routes the schedule on a series-parallel network by the dominating NE
// computed once at the initial configuration, then tracks occupancy.
BoundReport queue_bound_experiment(const Network& net, const InflowSchedule& schedule,
                                   Time horizon);

// Same shape for sigma-star play. On an inflow start, sigma-star play follows
// the dominating profile of the initial configuration, which is used directly.
BoundReport spe_bound_experiment(const Network& net, const InflowSchedule& schedule,
                                 Time horizon);

// True when every internal vertex has at least as many out-edges as in-edges.
bool degree_condition_holds(const Network& net);

void write_occupancy_tsv(std::ostream& out, const OccupancyTrace& trace);
void write_latency_tsv(std::ostream& out, const BoundReport& report);

}  // namespace dqgame

#endif  // DQGAME_ANALYSIS_ANALYSIS_HPP_
