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
#include <numeric>
#include <random>
#include <sstream>

#include "dqgame/equilibrium/equilibrium.hpp"

namespace dqgame {

bool PropertyReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const PropertyCheck& c) { return !c.applicable || c.holds; });
}

const PropertyCheck* PropertyReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool weakly_preempts(const Network& graph, const AgentTrace& i, const AgentTrace& j, VertexId v) {
  const int a = i.index_of(v);
  const int b = j.index_of(v);
  if (a <= 0 || b <= 0) return false;
  if (i.times[a] != j.times[b]) return i.times[a] < j.times[b];
  return graph.rank(i.path[a - 1]) < graph.rank(j.path[b - 1]);
}

namespace {

std::string name_of(const Instance& inst, AgentId a) { return inst.agent_name(a); }

PropertyCheck make_check(const char* name) {
  PropertyCheck check;
  check.name = name;
  return check;
}

PropertyCheck check_fifo(const Instance& inst, const PathProfile& profile,
                         const RoutingTrace& trace) {
  const Network& g = inst.net.graph();
  PropertyCheck check = make_check(kGlobalFifo);
  for (std::size_t i = 0; i < trace.agents.size(); ++i) {
    const AgentTrace& ti = trace.agents[i];
    if (!ti.routed()) continue;
    for (std::size_t j = 0; j < trace.agents.size(); ++j) {
      const AgentTrace& tj = trace.agents[j];
      if (i == j || !tj.routed()) continue;
      for (std::size_t k = 1; k < ti.vertices.size(); ++k) {
        const VertexId v = ti.vertices[k];
        ++check.cases;
        if (weakly_preempts(g, ti, tj, v) && ti.exit_time() > tj.exit_time()) {
          check.holds = false;
          check.witness = Witness{{AgentId(i), AgentId(j)}, v, profile,
                                  name_of(inst, AgentId(i)) + " weakly preempts " +
                                      name_of(inst, AgentId(j)) + " at " + g.vertex_name(v) +
                                      " but exits later"};
          return check;
        }
      }
    }
  }
  return check;
}

// Completions of the agents outside `fixed`: every combination when
// exhaustive and small enough, otherwise `samples` random ones.
class Completions {
 public:
  Completions(const Network& graph, const Configuration& c, const PathProfile& profile,
              const std::vector<char>& fixed, const PropertyOptions& opt, std::mt19937_64& rng)
      : graph_(graph), c_(c), base_(profile), rng_(rng) {
    for (AgentId a : c.present_agents()) {
      if (!fixed[a.idx()]) free_.push_back(a);
    }
    if (opt.exhaustive) {
      std::size_t total = 1;
      bool fits = true;
      for (AgentId a : free_) {
        options_.push_back(enumerate_paths(graph, c.locate(a)->edge, opt.guard));
        if (total > opt.guard / options_.back().size()) fits = false;
        total = fits ? total * options_.back().size() : total;
      }
      if (fits) {
        total_ = total;
        return;
      }
      options_.clear();
    }
    total_ = static_cast<std::size_t>(opt.samples);
  }

  std::size_t size() const { return total_; }

  PathProfile make(std::size_t idx) {
    PathProfile p = base_;
    if (!options_.empty()) {
      for (std::size_t k = free_.size(); k-- > 0;) {
        p[free_[k].idx()] = options_[k][idx % options_[k].size()];
        idx /= options_[k].size();
      }
    } else {
      for (AgentId a : free_) p[a.idx()] = random_path(graph_, c_.locate(a)->edge, rng_);
    }
    return p;
  }

 private:
  const Network& graph_;
  const Configuration& c_;
  const PathProfile& base_;
  std::mt19937_64& rng_;
  std::vector<AgentId> free_;
  std::vector<std::vector<Path>> options_;
  std::size_t total_ = 0;
};

void check_hierarchy(const Instance& inst, const Configuration& c, const PathProfile& profile,
                     const RoutingTrace& trace, const PropertyOptions& opt,
                     PropertyCheck& independence, PropertyCheck& optimality) {
  const Network& g = inst.net.graph();
  const auto batches = batch_decompose(trace);
  std::mt19937_64 rng(opt.seed);
  std::vector<char> fixed(c.num_agents(), 0);
  for (std::size_t p = 0; p < batches.size(); ++p) {
    Completions comps(g, c, profile, fixed, opt, rng);
    for (std::size_t s = 0; s < comps.size(); ++s) {
      PathProfile trial = comps.make(s);
      RoutingTrace tr = run_paths(g, c, trial);
      if (p > 0) {
        ++independence.cases;
        for (std::size_t a = 0; a < fixed.size() && independence.holds; ++a) {
          if (fixed[a] && tr.agents[a].times != trace.agents[a].times) {
            independence.holds = false;
            independence.witness =
                Witness{{AgentId(a)}, VertexId(), trial,
                        "times of " + name_of(inst, AgentId(a)) + " change when later batches deviate"};
          }
        }
      }
      ++optimality.cases;
      Time best = kNever;
      AgentId who;
      for (AgentId a : c.present_agents()) {
        if (!fixed[a.idx()] && tr.exit_time(a) < best) {
          best = tr.exit_time(a);
          who = a;
        }
      }
      if (optimality.holds && best < batches[p].time) {
        optimality.holds = false;
        optimality.witness = Witness{{who}, g.destination(), trial,
                                     name_of(inst, who) + " beats batch " + std::to_string(p + 1) +
                                         " at time " + std::to_string(best)};
      }
    }
    for (AgentId a : batches[p].members) fixed[a.idx()] = 1;
  }
}

PropertyCheck check_strong_exhaustive(const Instance& inst, const Configuration& c,
                                      const PathProfile& profile, const PropertyOptions& opt) {
  const Network& g = inst.net.graph();
  PropertyCheck check = make_check(kStrongNe);
  ProfileTable table(g, c, opt.guard);
  std::vector<int> own(table.agents().size());
  for (std::size_t k = 0; k < own.size(); ++k) {
    const auto& opts = table.options(k);
    auto it = std::find(opts.begin(), opts.end(), profile[table.agents()[k].idx()]);
    own[k] = static_cast<int>(it - opts.begin());
  }
  const std::size_t base = table.index(own);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    if (idx == base) continue;
    ++check.cases;
    auto dig = table.digits(idx);
    bool all_better = true;
    std::vector<AgentId> coalition;
    for (std::size_t k = 0; k < dig.size() && all_better; ++k) {
      if (dig[k] == own[k]) continue;
      coalition.push_back(table.agents()[k]);
      all_better = table.exit_time(idx, k) < table.exit_time(base, k);
    }
    if (all_better) {
      check.holds = false;
      check.witness = Witness{coalition, g.destination(), table.profile(idx),
                              "coalition of " + std::to_string(coalition.size()) +
                                  " agents all exit earlier"};
      return check;
    }
  }
  return check;
}

PropertyCheck check_strong_sampled(const Instance& inst, const Configuration& c,
                                   const PathProfile& profile, const RoutingTrace& trace,
                                   const PropertyOptions& opt) {
  const Network& g = inst.net.graph();
  PropertyCheck check = make_check(kStrongNe);
  std::mt19937_64 rng(opt.seed ^ 0x5bd1e995u);
  const auto agents = c.present_agents();
  const int n = static_cast<int>(agents.size());
  // Subsets of size <= coalition_size via index combinations.
  for (int size = 1; size <= std::min(opt.coalition_size, n); ++size) {
    std::vector<int> pick(size);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      std::vector<std::vector<Path>> options;
      std::size_t total = 1;
      for (int k : pick) {
        options.push_back(
            enumerate_paths(g, c.locate(agents[k])->edge, static_cast<std::size_t>(opt.guard)));
        total = std::min<std::size_t>(total * options.back().size(), 1u << 30);
      }
      const bool all = total <= static_cast<std::size_t>(opt.coalition_alternatives);
      const std::size_t tries = all ? total : static_cast<std::size_t>(opt.coalition_alternatives);
      for (std::size_t s = 0; s < tries; ++s) {
        PathProfile trial = profile;
        std::size_t idx = s;
        for (int k = size; k-- > 0;) {
          const auto& opts = options[k];
          std::size_t choice = all ? idx % opts.size()
                                   : std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng);
          idx /= opts.size();
          trial[agents[pick[k]].idx()] = opts[choice];
        }
        ++check.cases;
        RoutingTrace tr = run_paths(g, c, trial);
        bool all_better = true;
        for (int k : pick) {
          AgentId a = agents[k];
          if (tr.exit_time(a) >= trace.exit_time(a)) all_better = false;
        }
        if (all_better) {
          std::vector<AgentId> coalition;
          for (int k : pick) coalition.push_back(agents[k]);
          check.holds = false;
          check.witness = Witness{coalition, g.destination(), trial,
                                  "coalition of " + std::to_string(size) + " agents all exit earlier"};
          return check;
        }
      }
      int i = size - 1;
      while (i >= 0 && pick[i] == n - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int k = i + 1; k < size; ++k) pick[k] = pick[k - 1] + 1;
    }
  }
  return check;
}

void check_priority_order(const Instance& inst, const Configuration& c, const PathProfile& profile,
                          const RoutingTrace& trace, PropertyCheck& consecutive,
                          PropertyCheck& overtaking) {
  const Network& g = inst.net.graph();
  const bool applicable = inst.from_inflow && c.time() == 0 && c.num_present() == inst.num_agents();
  consecutive.applicable = overtaking.applicable = applicable;
  if (!applicable) return;
  std::vector<AgentId> order = c.present_agents();
  std::sort(order.begin(), order.end(),
            [&](AgentId a, AgentId b) { return inst.higher_original_priority(a, b); });
  std::vector<int> pos(inst.num_agents());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k].idx()] = static_cast<int>(k);
  for (const Batch& b : batch_decompose(trace)) {
    ++consecutive.cases;
    int lo = 1 << 30, hi = -1;
    for (AgentId a : b.members) {
      lo = std::min(lo, pos[a.idx()]);
      hi = std::max(hi, pos[a.idx()]);
    }
    if (hi - lo + 1 != static_cast<int>(b.members.size())) {
      consecutive.holds = false;
      consecutive.witness = Witness{b.members, g.destination(), profile,
                                    "batch at time " + std::to_string(b.time) +
                                        " skips an agent of intermediate priority"};
      break;
    }
  }
  for (std::size_t hi = 0; hi < order.size(); ++hi) {
    for (std::size_t lo = hi + 1; lo < order.size(); ++lo) {
      const AgentTrace& tj = trace[order[hi]];  // higher original priority
      const AgentTrace& ti = trace[order[lo]];
      for (std::size_t k = 1; k < ti.vertices.size(); ++k) {
        const VertexId v = ti.vertices[k];
        if (!inst.net.is_g_vertex(v) || v == inst.net.g_origin()) continue;
        const Time tjv = tj.time_at(v);
        if (tjv == kNever) continue;
        ++overtaking.cases;
        if (ti.times[k] < tjv && ti.exit_time() != tj.exit_time()) {
          overtaking.holds = false;
          overtaking.witness = Witness{{order[lo], order[hi]}, v, profile,
                                       "overtaking at " + g.vertex_name(v) +
                                           " without a shared exit time"};
          return;
        }
      }
    }
  }
}

}  // namespace

PropertyReport check_properties(const Instance& inst, const Configuration& c,
                                const PathProfile& profile, const PropertyOptions& options) {
  const Network& g = inst.net.graph();
  for (AgentId a : c.present_agents()) {
    if (profile.size() != c.num_agents() || profile[a.idx()].empty()) {
      throw Error(ErrorCode::kInvalidPath, "every present agent needs a path");
    }
  }
  RoutingTrace trace = run_paths(g, c, profile);
  PropertyReport report;
  report.checks.push_back(check_fifo(inst, profile, trace));
  PropertyCheck independence = make_check(kHierarchalIndependence);
  PropertyCheck optimality = make_check(kHierarchalOptimality);
  check_hierarchy(inst, c, profile, trace, options, independence, optimality);
  report.checks.push_back(independence);
  report.checks.push_back(optimality);
  report.checks.push_back(options.exhaustive
                              ? check_strong_exhaustive(inst, c, profile, options)
                              : check_strong_sampled(inst, c, profile, trace, options));
  PropertyCheck consecutive = make_check(kConsecutiveExiting);
  PropertyCheck overtaking = make_check(kTemporalOvertaking);
  check_priority_order(inst, c, profile, trace, consecutive, overtaking);
  report.checks.push_back(consecutive);
  report.checks.push_back(overtaking);
  return report;
}

}  // namespace dqgame
