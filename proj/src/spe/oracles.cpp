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
#include <utility>

#include "dqgame/spe/spe.hpp"

namespace dqgame {

History root_history(const Configuration& c) {
  auto node = std::make_shared<HistoryNode>();
  node->config = c;
  node->key = c.key();
  return node;
}

History extend(const History& h, const Network& graph, const ActionProfile& actions) {
  auto node = std::make_shared<HistoryNode>();
  node->parent = h;
  node->config = step(graph, h->config, actions);
  node->key = h->key + "|" + node->config.key();
  node->depth = h->depth + 1;
  return node;
}

ActionProfile actions_from_paths(const Network& graph, const Configuration& c,
                                 const PathProfile& paths) {
  ActionProfile out(c.num_agents());
  for (AgentId a : c.present_agents()) out[a.idx()] = action_along(graph, c, a, paths[a.idx()]);
  return out;
}

const PathProfile& SigmaStar::profile_at(const Configuration& c) {
  std::string key = c.key();
  auto it = profiles_.find(key);
  if (it == profiles_.end()) {
    it = profiles_.emplace(std::move(key), iterative_dominating_profile(graph_, c).paths).first;
  }
  return it->second;
}

ActionProfile SigmaStar::actions_at(const Configuration& c) {
  return actions_from_paths(graph_, c, profile_at(c));
}

NeBasedSpe::NeBasedSpe(const Network& graph, const Configuration& root, PathProfile ne)
    : graph_(graph), root_key_(root.key()), root_profile_(std::move(ne)) {
  if (root_profile_.size() != root.num_agents()) {
    throw Error(ErrorCode::kUnknownAgent, "profile size does not match the agent count");
  }
  for (AgentId a : root.present_agents()) check_path(graph_, root, a, root_profile_[a.idx()]);
}

namespace {

// The action each agent present in `from` actually took to reach `to`.
ActionProfile realized_actions(const Configuration& from, const Configuration& to) {
  ActionProfile out(from.num_agents());
  for (AgentId a : from.present_agents()) {
    const auto& now = to.locate(a);
    if (!now) {
      out[a.idx()] = Action::exit();
    } else if (now->edge != from.locate(a)->edge) {
      out[a.idx()] = Action::move(now->edge);
    }
  }
  return out;
}

}  // namespace

const PathProfile& NeBasedSpe::profile_at(const History& h) {
  auto it = profiles_.find(h->key);
  if (it != profiles_.end()) return it->second;
  if (!h->parent) {
    if (h->key != root_key_) {
      throw Error(ErrorCode::kInvalidAction, "history does not start at the oracle's root");
    }
    return profiles_.emplace(h->key, root_profile_).first->second;
  }
  const Configuration& prev = h->parent->config;
  const PathProfile rho = profile_at(h->parent);
  const ActionProfile told = actions_from_paths(graph_, prev, rho);
  const ActionProfile did = realized_actions(prev, h->config);

  PathProfile base(h->config.num_agents());
  bool everyone_kept = true;
  bool leading = true;
  for (const Batch& batch : batch_decompose(graph_, prev, rho)) {
    if (leading) {
      leading = std::all_of(batch.members.begin(), batch.members.end(),
                            [&](AgentId a) { return told[a.idx()] == did[a.idx()]; });
    }
    for (AgentId a : batch.members) {
      if (!h->config.present(a)) continue;
      if (leading) {
        base[a.idx()] = advance_path(rho[a.idx()], did[a.idx()]);
      } else {
        everyone_kept = false;
      }
    }
  }
  PathProfile next;
  if (everyone_kept) {
    next = std::move(base);
  } else {
    DominatingOptions options;
    options.base = &base;
    next = iterative_dominating_profile(graph_, h->config, options).paths;
  }
  return profiles_.emplace(h->key, std::move(next)).first->second;
}

ActionProfile NeBasedSpe::actions(const History& h) {
  return actions_from_paths(graph_, h->config, profile_at(h));
}

ActionProfile LowestPriorityOracle::actions(const History& h) {
  const Configuration& c = h->config;
  ActionProfile out(c.num_agents());
  for (AgentId a : c.present_agents()) {
    const auto& loc = c.locate(a);
    if (loc->position != 0) continue;
    const VertexId v = graph_.head(loc->edge);
    if (v == graph_.destination()) {
      out[a.idx()] = Action::exit();
      continue;
    }
    EdgeId pick;
    for (EdgeId f : graph_.out_edges(v)) {
      if (!pick.valid() || std::pair(graph_.rank(f), f) > std::pair(graph_.rank(pick), pick)) {
        pick = f;
      }
    }
    out[a.idx()] = Action::move(pick);
  }
  return out;
}

FixedPathOracle::FixedPathOracle(const Network& graph, PathProfile paths, StrategyOracle* fallback)
    : graph_(graph), paths_(std::move(paths)), fallback_(fallback) {}

ActionProfile FixedPathOracle::actions(const History& h) {
  const Configuration& c = h->config;
  ActionProfile out;
  bool need_fallback = false;
  std::vector<std::optional<Action>> own(c.num_agents());
  for (AgentId a : c.present_agents()) {
    const Path* path = a.idx() < paths_.size() ? &paths_[a.idx()] : nullptr;
    const EdgeId e = c.locate(a)->edge;
    auto it = path ? std::find(path->begin(), path->end(), e) : Path::const_iterator();
    if (path && it != path->end()) {
      own[a.idx()] = action_along(graph_, c, a, Path(it, path->end()));
    } else {
      need_fallback = true;
    }
  }
  if (need_fallback) {
    if (!fallback_) throw Error(ErrorCode::kInvalidPath, "agent left its fixed path");
    out = fallback_->actions(h);
  } else {
    out.assign(c.num_agents(), Action::stay());
  }
  for (std::size_t a = 0; a < own.size(); ++a) {
    if (own[a]) out[a] = *own[a];
  }
  return out;
}

PlayResult play(const Network& graph, StrategyOracle& oracle, const History& h) {
  PlayResult out;
  const Configuration& c0 = h->config;
  out.trace.start = c0.time();
  out.trace.agents.resize(c0.num_agents());
  out.exit.assign(c0.num_agents(), kNever);
  for (AgentId a : c0.present_agents()) {
    AgentTrace& at = out.trace.agents[a.idx()];
    const EdgeId e = c0.locate(a)->edge;
    at.path.push_back(e);
    at.vertices.push_back(graph.tail(e));
    at.times.push_back(c0.time());
  }
  const Time horizon = default_horizon(graph, c0);
  History cur = h;
  while (cur->config.num_present() > 0) {
    const Configuration& c = cur->config;
    if (c.time() >= horizon) {
      throw Error(ErrorCode::kHorizonExceeded,
                  "play did not finish by time " + std::to_string(horizon));
    }
    const ActionProfile acts = oracle.actions(cur);
    History next = extend(cur, graph, acts);
    for (AgentId a : c.present_agents()) {
      const auto& loc = c.locate(a);
      if (loc->position != 0) continue;
      AgentTrace& at = out.trace.agents[a.idx()];
      at.vertices.push_back(graph.head(loc->edge));
      at.times.push_back(c.time() + 1);
      const Action& act = acts[a.idx()];
      if (act.kind == Action::Kind::kMove) {
        at.path.push_back(act.edge);
      } else {
        out.exit[a.idx()] = c.time() + 1;
      }
    }
    cur = std::move(next);
  }
  return out;
}

PathProfile induced_paths(const Network& graph, StrategyOracle& oracle, const History& h) {
  PlayResult r = play(graph, oracle, h);
  PathProfile out(r.trace.agents.size());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = std::move(r.trace.agents[a].path);
  return out;
}

}  // namespace dqgame
