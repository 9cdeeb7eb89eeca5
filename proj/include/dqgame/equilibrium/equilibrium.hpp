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

#ifndef DQGAME_EQUILIBRIUM_EQUILIBRIUM_HPP_
#define DQGAME_EQUILIBRIUM_EQUILIBRIUM_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dqgame/bestresponse/best_response.hpp"
#include "dqgame/dynamics/dynamics.hpp"

namespace dqgame {

struct DominatingProfile {
  PathProfile paths;
  std::vector<AgentId> order;  // agents in the order they were assigned
};

struct DominatingOptions {
  // Paths already fixed for some agents; they are routed first and must be
  // unaffected by everyone else.
  const PathProfile* base = nullptr;
  int base_check_samples = 8;
  std::uint64_t seed = 1;
};

// Repeatedly finds the agent that, alone with the agents assigned so far,
// reaches d earliest; ties go to the higher-priority last edge, then
// backwards vertex by vertex, then to queue position on the starting edge.
// That agent gets its earliest-arrival path.
DominatingProfile iterative_dominating_profile(const Network& graph, const Configuration& c,
                                               const DominatingOptions& options = {});

struct Deviation {
  AgentId agent;
  Path path;
  Time current = kNever;
  Time improved = kNever;
};

struct NeVerdict {
  bool is_ne = true;
  std::optional<Deviation> witness;
};

NeVerdict verify_ne(const Network& graph, const Configuration& c, const PathProfile& profile);
// Throws NotAnNE with the witness in the message.
void require_ne(const Network& graph, const Configuration& c, const PathProfile& profile);

struct Batch {
  Time time = 0;
  std::vector<AgentId> members;
};

// Agents grouped by their arrival time at d, earliest first.
std::vector<Batch> batch_decompose(const RoutingTrace& trace);
std::vector<Batch> batch_decompose(const Network& graph, const Configuration& c,
                                   const PathProfile& profile);

struct Witness {
  std::vector<AgentId> agents;
  VertexId vertex;
  PathProfile profile;  // routing under which the violation shows
  std::string detail;
};

struct PropertyCheck {
  std::string name;
  bool applicable = true;
  bool holds = true;
  std::size_t cases = 0;
  std::optional<Witness> witness;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  bool all_hold() const;
  const PropertyCheck* find(const std::string& name) const;
};

struct PropertyOptions {
  int samples = 50;
  std::uint64_t seed = 1;
  int coalition_size = 3;
  int coalition_alternatives = 20;
  bool exhaustive = false;  // exhaustive strong-NE and independence checks
  std::size_t guard = 1000000;
};

inline constexpr const char* kGlobalFifo = "global_fifo";
inline constexpr const char* kHierarchalIndependence = "hierarchal_independence";
inline constexpr const char* kHierarchalOptimality = "hierarchal_optimality";
inline constexpr const char* kStrongNe = "strong_ne";
inline constexpr const char* kConsecutiveExiting = "consecutive_exiting";
inline constexpr const char* kTemporalOvertaking = "temporal_overtaking";

// Consecutive exiting and temporal overtaking refer to original priorities,
// so they apply only at the start configuration of an inflow schedule.
PropertyReport check_properties(const Instance& inst, const Configuration& c,
                                const PathProfile& profile, const PropertyOptions& options = {});

// i weakly preempts j at v: i reaches v earlier, or at the same time through
// an edge of higher priority. Start vertices (no entering edge) never count.
bool weakly_preempts(const Network& graph, const AgentTrace& i, const AgentTrace& j, VertexId v);

// Every path profile of the present agents with its exit times.
class ProfileTable {
 public:
  ProfileTable(const Network& graph, const Configuration& c, std::size_t guard = 1000000);

  std::size_t size() const { return exits_.size(); }
  const std::vector<AgentId>& agents() const { return agents_; }
  const std::vector<Path>& options(std::size_t k) const { return options_[k]; }
  // Digits of profile `index`, one option index per entry of agents().
  std::vector<int> digits(std::size_t index) const;
  std::size_t index(const std::vector<int>& digits) const;
  Time exit_time(std::size_t index, std::size_t k) const { return exits_[index][k]; }
  PathProfile profile(std::size_t index) const;
  bool is_ne(std::size_t index) const;

 private:
  std::size_t num_agents_total_ = 0;
  std::vector<AgentId> agents_;
  std::vector<std::vector<Path>> options_;
  std::vector<std::size_t> radix_;
  std::vector<std::vector<Time>> exits_;
};

// All pure NE of the interim game at c, by exhaustive enumeration.
std::vector<PathProfile> enumerate_all_ne(const Network& graph, const Configuration& c,
                                          std::size_t guard = 1000000);

// For the dominating profile: under random paths for the agents assigned
// after i, agent i's times on its path equal its standalone earliest times
// and are no later than anyone else's (among i and later agents) at those
// vertices.
std::optional<Witness> check_domination_inequality(const Network& graph, const Configuration& c,
                                                   const DominatingProfile& dom, int samples,
                                                   std::uint64_t seed);

}  // namespace dqgame

#endif  // DQGAME_EQUILIBRIUM_EQUILIBRIUM_HPP_
