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
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "dqgame/spe/spe.hpp"

namespace dqgame {
namespace {

class Auditor {
 public:
  Auditor(const Network& graph, StrategyOracle& oracle) : graph_(graph), oracle_(oracle) {}

  // Exit times of everyone when the oracle is followed from h.
  const std::vector<Time>& continuation(const History& h) {
    std::vector<History> chain;
    History cur = h;
    const std::vector<Time>* known = nullptr;
    while (true) {
      auto it = memo_.find(cur->key);
      if (it != memo_.end()) {
        known = &it->second;
        break;
      }
      if (cur->config.num_present() == 0) {
        known = &memo_.emplace(cur->key, std::vector<Time>(cur->config.num_agents(), kNever))
                     .first->second;
        break;
      }
      chain.push_back(cur);
      cur = extend(cur, graph_, oracle_.actions(cur));
    }
    std::vector<Time> exits = *known;
    for (std::size_t k = chain.size(); k-- > 0;) {
      const Configuration& c = chain[k]->config;
      for (AgentId a : c.present_agents()) {
        const auto& loc = c.locate(a);
        if (loc->position == 0 && graph_.head(loc->edge) == graph_.destination()) {
          exits[a.idx()] = c.time() + 1;
        }
      }
      known = &memo_.emplace(chain[k]->key, exits).first->second;
    }
    return *known;
  }

  // Checks every one-shot deviation at h; returns false on a profitable one.
  bool check_node(const History& h, AuditResult& result) {
    ++result.nodes;
    const Configuration& c = h->config;
    if (c.num_present() == 0) return true;
    const ActionProfile told = oracle_.actions(h);
    const std::vector<Time> base = continuation(h);
    for (AgentId a : c.present_agents()) {
      const std::vector<Action> options = action_set(graph_, c, a);
      if (options.size() < 2) continue;
      for (const Action& alt : options) {
        if (alt == told[a.idx()]) continue;
        ++result.deviations;
        ActionProfile acts = told;
        acts[a.idx()] = alt;
        const Time t = continuation(extend(h, graph_, acts))[a.idx()];
        if (t < base[a.idx()]) {
          AuditWitness w;
          for (const HistoryNode* n = h.get(); n; n = n->parent.get()) {
            w.history.push_back(n->config.key());
          }
          std::reverse(w.history.begin(), w.history.end());
          w.agent = a;
          w.deviation = alt;
          w.prescribed_exit = base[a.idx()];
          w.deviation_exit = t;
          result.passed = false;
          result.witness = std::move(w);
          return false;
        }
      }
    }
    return true;
  }

  std::vector<std::vector<Action>> option_lists(const Configuration& c) const {
    std::vector<std::vector<Action>> out(c.num_agents(), {Action::stay()});
    for (AgentId a : c.present_agents()) out[a.idx()] = action_set(graph_, c, a);
    return out;
  }

 private:
  const Network& graph_;
  StrategyOracle& oracle_;
  std::unordered_map<std::string, std::vector<Time>> memo_;
};

}  // namespace

AuditResult one_deviation_audit(const Network& graph, const Configuration& root,
                                StrategyOracle& oracle, const AuditOptions& options) {
  AuditResult result;
  Auditor auditor(graph, oracle);
  const History r = root_history(root);
  if (options.depth >= 0) {
    result.depth = options.depth;
  } else {
    Time last = root.time();
    for (Time t : auditor.continuation(r)) {
      if (t != kNever) last = std::max(last, t);
    }
    result.depth = static_cast<int>(last - root.time()) + 2;
  }

  if (options.exhaustive) {
    std::vector<History> stack{r};
    while (!stack.empty()) {
      History h = std::move(stack.back());
      stack.pop_back();
      if (!auditor.check_node(h, result)) return result;
      if (result.nodes >= options.max_nodes) {
        result.truncated = true;
        return result;
      }
      if (h->depth >= result.depth || h->config.num_present() == 0) continue;
      const auto lists = auditor.option_lists(h->config);
      std::vector<std::size_t> digit(lists.size(), 0);
      while (true) {
        ActionProfile acts(lists.size());
        for (std::size_t a = 0; a < lists.size(); ++a) acts[a] = lists[a][digit[a]];
        stack.push_back(extend(h, graph, acts));
        std::size_t a = 0;
        while (a < lists.size() && ++digit[a] == lists[a].size()) digit[a++] = 0;
        if (a == lists.size()) break;
      }
    }
    return result;
  }

  std::mt19937_64 rng(options.seed);
  std::unordered_set<std::string> seen;
  for (int s = 0; s < options.samples; ++s) {
    const int len = std::uniform_int_distribution<int>(0, result.depth)(rng);
    History h = r;
    for (int k = 0; k <= len; ++k) {
      if (seen.insert(h->key).second && !auditor.check_node(h, result)) return result;
      if (k == len || h->config.num_present() == 0) break;
      const bool follow = std::bernoulli_distribution(0.5)(rng);
      ActionProfile acts = oracle.actions(h);
      if (!follow) {
        const auto lists = auditor.option_lists(h->config);
        for (std::size_t a = 0; a < lists.size(); ++a) {
          acts[a] = lists[a][std::uniform_int_distribution<std::size_t>(0, lists[a].size() - 1)(rng)];
        }
      }
      h = extend(h, graph, acts);
    }
  }
  return result;
}

}  // namespace dqgame
