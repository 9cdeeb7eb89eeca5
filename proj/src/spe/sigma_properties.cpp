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

#include "dqgame/spe/spe.hpp"

namespace dqgame {
namespace {

PropertyCheck make_check(const char* name) {
  PropertyCheck check;
  check.name = name;
  return check;
}

// Agents in `keep` follow sigma-star, everyone else picks uniformly at random.
class MixedOracle : public StrategyOracle {
 public:
  MixedOracle(const Network& graph, SigmaStar& sigma, std::vector<bool> keep, std::uint64_t seed)
      : graph_(graph), sigma_(sigma), keep_(std::move(keep)), rng_(seed) {}
  ActionProfile actions(const History& h) override {
    ActionProfile out = sigma_.actions(h);
    for (AgentId a : h->config.present_agents()) {
      if (keep_[a.idx()]) continue;
      auto options = action_set(graph_, h->config, a);
      out[a.idx()] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng_)];
    }
    return out;
  }
  std::string name() const override { return "mixed"; }

 private:
  const Network& graph_;
  SigmaStar& sigma_;
  std::vector<bool> keep_;
  std::mt19937_64 rng_;
};

bool same_trace(const AgentTrace& a, const AgentTrace& b) {
  return a.path == b.path && a.times == b.times;
}

std::vector<AgentId> by_original_priority(const Instance& inst) {
  std::vector<AgentId> order = inst.initial.present_agents();
  std::sort(order.begin(), order.end(),
            [&](AgentId a, AgentId b) { return inst.higher_original_priority(a, b); });
  return order;
}

Configuration relabel(const Configuration& c, const std::vector<std::size_t>& perm) {
  Configuration out(c.time(), c.num_edges(), c.num_agents());
  for (std::size_t e = 0; e < c.num_edges(); ++e) {
    for (AgentId a : c.queue(EdgeId(e))) out.push_back(EdgeId(e), AgentId(perm[a.idx()]));
  }
  return out;
}

}  // namespace

PropertyReport check_sigma_star_properties(const Instance& inst, int samples, std::uint64_t seed) {
  const Network& g = inst.net.graph();
  const Configuration& c0 = inst.initial;
  SigmaStar sigma(g);
  const History root = root_history(c0);
  const PlayResult star = play(g, sigma, root);
  const std::vector<AgentId> order = by_original_priority(inst);
  std::mt19937_64 rng(seed);
  PropertyReport report;

  PropertyCheck indep = make_check(kSequentialIndependence);
  indep.applicable = inst.from_inflow;
  if (indep.applicable) {
    for (std::size_t k = 0; k < order.size() && indep.holds; ++k) {
      std::vector<bool> keep(c0.num_agents(), false);
      for (std::size_t j = 0; j <= k; ++j) keep[order[j].idx()] = true;
      for (int s = 0; s < samples && indep.holds; ++s) {
        MixedOracle mixed(g, sigma, keep, rng());
        const PlayResult alt = play(g, mixed, root);
        for (std::size_t j = 0; j <= k; ++j) {
          ++indep.cases;
          const AgentId a = order[j];
          if (!same_trace(alt.trace[a], star.trace[a])) {
            PathProfile paths(c0.num_agents());
            for (std::size_t x = 0; x < paths.size(); ++x) paths[x] = alt.trace.agents[x].path;
            indep.holds = false;
            indep.witness = Witness{{a}, VertexId(), paths,
                                    inst.agent_name(a) + " changes when lower agents deviate"};
            break;
          }
        }
      }
    }
  }
  report.checks.push_back(std::move(indep));

  PropertyCheck overtaking = make_check(kNoOvertaking);
  overtaking.applicable = inst.from_inflow;
  if (overtaking.applicable) {
    for (std::size_t x = 0; x < order.size() && overtaking.holds; ++x) {
      for (std::size_t y = x + 1; y < order.size() && overtaking.holds; ++y) {
        const AgentTrace& hi = star.trace[order[x]];
        const AgentTrace& lo = star.trace[order[y]];
        for (std::size_t k = 1; k < hi.vertices.size(); ++k) {
          const VertexId v = hi.vertices[k];
          if (lo.index_of(v) <= 0) continue;
          ++overtaking.cases;
          if (!weakly_preempts(g, hi, lo, v)) {
            overtaking.holds = false;
            overtaking.witness =
                Witness{{order[x], order[y]}, v, {},
                        inst.agent_name(order[y]) + " overtakes " + inst.agent_name(order[x]) +
                            " at " + g.vertex_name(v)};
            break;
          }
        }
      }
    }
  }
  report.checks.push_back(std::move(overtaking));

  PropertyCheck earliest = make_check(kEarliestArrival);
  for (AgentId a : order) {
    if (!earliest.holds) break;
    const AgentTrace& mine = star.trace[a];
    std::vector<Path> paths = enumerate_paths(g, c0.locate(a)->edge, 2000);
    std::shuffle(paths.begin(), paths.end(), rng);
    if (paths.size() > static_cast<std::size_t>(samples)) paths.resize(samples);
    for (const Path& p : paths) {
      PathProfile fixed(c0.num_agents());
      fixed[a.idx()] = p;
      FixedPathOracle oracle(g, fixed, &sigma);
      const PlayResult alt = play(g, oracle, root);
      const AgentTrace& other = alt.trace[a];
      for (std::size_t k = 1; k < other.vertices.size(); ++k) {
        const int mk = mine.index_of(other.vertices[k]);
        if (mk <= 0) continue;
        ++earliest.cases;
        if (other.times[k] < mine.times[mk]) {
          PathProfile w(c0.num_agents());
          for (std::size_t x = 0; x < w.size(); ++x) w[x] = alt.trace.agents[x].path;
          earliest.holds = false;
          earliest.witness = Witness{{a}, other.vertices[k], w,
                                     inst.agent_name(a) + " reaches " +
                                         g.vertex_name(other.vertices[k]) + " earlier off-path"};
          break;
        }
      }
      if (!earliest.holds) break;
    }
  }
  report.checks.push_back(std::move(earliest));

  // Markov: actions depend on the configuration only, so two histories that
  // meet agree. Anonymity: relabelling agents permutes the actions.
  PropertyCheck markov = make_check(kMarkovAnonymity);
  std::vector<std::size_t> perm(c0.num_agents());
  for (int s = 0; s < samples && markov.holds; ++s) {
    History h = root;
    MixedOracle walker(g, sigma, std::vector<bool>(c0.num_agents(), false), rng());
    const int len = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int k = 0; k < len && h->config.num_present() > 0; ++k) {
      h = extend(h, g, walker.actions(h));
    }
    if (h->config.num_present() == 0) continue;
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    SigmaStar fresh(g);
    const ActionProfile here = sigma.actions(h);
    const ActionProfile recomputed = fresh.actions_at(h->config);
    const ActionProfile permuted = fresh.actions_at(relabel(h->config, perm));
    for (AgentId a : h->config.present_agents()) {
      ++markov.cases;
      if (!(here[a.idx()] == recomputed[a.idx()]) || !(here[a.idx()] == permuted[perm[a.idx()]])) {
        markov.holds = false;
        markov.witness = Witness{{a}, VertexId(), {},
                                 "action of " + inst.agent_name(a) + " depends on labels at " +
                                     h->config.key()};
        break;
      }
    }
  }
  report.checks.push_back(std::move(markov));
  return report;
}

}  // namespace dqgame
