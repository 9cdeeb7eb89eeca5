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
#include <map>
#include <random>
#include <set>

#include "dqgame/equilibrium/equilibrium.hpp"

namespace dqgame {

namespace {

void require_complete(const Configuration& c, const PathProfile& profile) {
  if (profile.size() != c.num_agents()) {
    throw Error(ErrorCode::kUnknownAgent, "profile size does not match the agent count");
  }
  for (AgentId a : c.present_agents()) {
    if (profile[a.idx()].empty()) {
      throw Error(ErrorCode::kInvalidPath, "agent " + std::to_string(a.value()) + " has no path");
    }
  }
}

}  // namespace

NeVerdict verify_ne(const Network& graph, const Configuration& c, const PathProfile& profile) {
  require_complete(c, profile);
  RoutingTrace trace = run_paths(graph, c, profile);
  NeVerdict verdict;
  for (AgentId a : c.present_agents()) {
    ArrivalTable table = earliest_arrival_table(graph, c, profile, a);
    const Time best = table.at(graph.destination());
    const Time now = trace.exit_time(a);
    if (best < now) {
      verdict.is_ne = false;
      verdict.witness = Deviation{a, table.path_to(graph, graph.destination()), now, best};
      return verdict;
    }
  }
  return verdict;
}

void require_ne(const Network& graph, const Configuration& c, const PathProfile& profile) {
  NeVerdict v = verify_ne(graph, c, profile);
  if (!v.is_ne) {
    throw Error(ErrorCode::kNotAnNE, "agent " + std::to_string(v.witness->agent.value()) +
                                         " improves from " + std::to_string(v.witness->current) +
                                         " to " + std::to_string(v.witness->improved));
  }
}

std::vector<Batch> batch_decompose(const RoutingTrace& trace) {
  std::map<Time, std::vector<AgentId>> by_time;
  for (std::size_t a = 0; a < trace.agents.size(); ++a) {
    if (trace.agents[a].routed()) by_time[trace.agents[a].exit_time()].push_back(AgentId(a));
  }
  std::vector<Batch> out;
  for (auto& [t, members] : by_time) out.push_back({t, std::move(members)});
  return out;
}

std::vector<Batch> batch_decompose(const Network& graph, const Configuration& c,
                                   const PathProfile& profile) {
  return batch_decompose(run_paths(graph, c, profile));
}

ProfileTable::ProfileTable(const Network& graph, const Configuration& c, std::size_t guard)
    : num_agents_total_(c.num_agents()), agents_(c.present_agents()) {
  std::size_t total = 1;
  for (AgentId a : agents_) {
    options_.push_back(enumerate_paths(graph, c.locate(a)->edge, guard));
    radix_.push_back(options_.back().size());
    if (total > guard / radix_.back()) {
      throw Error(ErrorCode::kTooManyProfiles,
                  "more than " + std::to_string(guard) + " path profiles");
    }
    total *= radix_.back();
  }
  exits_.resize(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    RoutingTrace tr = run_paths(graph, c, profile(idx));
    exits_[idx].resize(agents_.size());
    for (std::size_t k = 0; k < agents_.size(); ++k) exits_[idx][k] = tr.exit_time(agents_[k]);
  }
}

std::vector<int> ProfileTable::digits(std::size_t index) const {
  std::vector<int> out(agents_.size());
  for (std::size_t k = agents_.size(); k-- > 0;) {
    out[k] = static_cast<int>(index % radix_[k]);
    index /= radix_[k];
  }
  return out;
}

std::size_t ProfileTable::index(const std::vector<int>& digits) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < agents_.size(); ++k) idx = idx * radix_[k] + digits[k];
  return idx;
}

PathProfile ProfileTable::profile(std::size_t index) const {
  PathProfile out(num_agents_total_);
  auto dig = digits(index);
  for (std::size_t k = 0; k < agents_.size(); ++k) out[agents_[k].idx()] = options_[k][dig[k]];
  return out;
}

bool ProfileTable::is_ne(std::size_t index) const {
  auto dig = digits(index);
  for (std::size_t k = 0; k < agents_.size(); ++k) {
    const int own = dig[k];
    for (std::size_t alt = 0; alt < radix_[k]; ++alt) {
      if (static_cast<int>(alt) == own) continue;
      dig[k] = static_cast<int>(alt);
      const bool better = exits_[this->index(dig)][k] < exits_[index][k];
      dig[k] = own;
      if (better) return false;
    }
  }
  return true;
}

std::vector<PathProfile> enumerate_all_ne(const Network& graph, const Configuration& c,
                                          std::size_t guard) {
  ProfileTable table(graph, c, guard);
  std::vector<PathProfile> out;
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    if (table.is_ne(idx)) out.push_back(table.profile(idx));
  }
  return out;
}

std::optional<Witness> check_domination_inequality(const Network& graph, const Configuration& c,
                                                   const DominatingProfile& dom, int samples,
                                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RoutingTrace full = run_paths(graph, c, dom.paths);
  std::vector<char> earlier(c.num_agents(), 0);
  for (AgentId a : c.present_agents()) {
    if (std::find(dom.order.begin(), dom.order.end(), a) == dom.order.end()) earlier[a.idx()] = 1;
  }
  for (AgentId i : dom.order) {
    const AgentTrace& ti = full[i];
    for (int s = 0; s < samples; ++s) {
      PathProfile before(c.num_agents());  // earlier agents fixed, the rest random
      for (AgentId a : c.present_agents()) {
        before[a.idx()] = earlier[a.idx()] ? dom.paths[a.idx()]
                                           : random_path(graph, c.locate(a)->edge, rng);
      }
      PathProfile with_i = before;
      with_i[i.idx()] = dom.paths[i.idx()];
      RoutingTrace lhs = run_paths(graph, c, with_i);
      if (lhs[i].times != ti.times) {
        return Witness{{i}, ti.vertices.back(), with_i,
                       "times of the dominating agent change under later agents' paths"};
      }
      RoutingTrace rhs = run_paths(graph, c, before);
      for (std::size_t k = 1; k < ti.vertices.size(); ++k) {
        const VertexId v = ti.vertices[k];
        for (AgentId j : c.present_agents()) {
          if (earlier[j.idx()]) continue;
          const int idx = rhs[j].index_of(v);
          if (idx <= 0) continue;
          if (rhs[j].times[idx] < ti.times[k]) {
            return Witness{{i, j}, v, before, "a later agent reaches a dominated vertex first"};
          }
        }
      }
    }
    earlier[i.idx()] = 1;
  }
  return std::nullopt;
}

}  // namespace dqgame
