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

#include "dqgame/cli/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dqgame {

ParseError::ParseError(ErrorCode code, int line, const std::string& message)
    : Error(code, (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + message),
      line_(line) {}

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line + 1; }

void expect_keys(const YAML::Node& n, std::initializer_list<const char*> keys,
                 const std::string& where) {
  if (!n.IsMap()) throw ParseError(line_of(n), where + " must be a mapping");
  for (const auto& kv : n) {
    const std::string k = kv.first.as<std::string>();
    if (std::find_if(keys.begin(), keys.end(), [&](const char* x) { return k == x; }) ==
        keys.end()) {
      throw ParseError(line_of(kv.first), "unknown key '" + k + "' in " + where);
    }
  }
}

const YAML::Node& require(const YAML::Node& parent, const YAML::Node& child, const char* key,
                          const std::string& where) {
  if (!child) throw ParseError(line_of(parent), where + " is missing '" + key + "'");
  return child;
}

template <class T>
T scalar(const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) throw ParseError(line_of(n), what + " must be a scalar");
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw ParseError(line_of(n), what + " has the wrong type");
  }
}

std::vector<std::string> name_list(const YAML::Node& n, const std::string& what) {
  if (!n.IsSequence()) throw ParseError(line_of(n), what + " must be a list");
  std::vector<std::string> out;
  for (const auto& x : n) out.push_back(scalar<std::string>(x, what + " entry"));
  return out;
}

NetworkSpec parse_network(const YAML::Node& n) {
  expect_keys(n, {"vertices", "origin", "destination", "edges", "priorities"}, "network");
  NetworkSpec spec;
  if (n["vertices"]) spec.vertices = name_list(n["vertices"], "network.vertices");
  spec.origin = scalar<std::string>(require(n, n["origin"], "origin", "network"), "origin");
  spec.destination =
      scalar<std::string>(require(n, n["destination"], "destination", "network"), "destination");
  const YAML::Node& edges = require(n, n["edges"], "edges", "network");
  if (!edges.IsSequence()) throw ParseError(line_of(edges), "network.edges must be a list");
  std::map<std::string, int> edge_line;
  std::map<std::string, std::vector<std::string>> in_edges;
  for (const auto& e : edges) {
    expect_keys(e, {"id", "tail", "head", "capacity", "transit"}, "edge");
    EdgeSpec es;
    es.name = scalar<std::string>(require(e, e["id"], "id", "edge"), "edge id");
    es.tail = scalar<std::string>(require(e, e["tail"], "tail", "edge"), "edge tail");
    es.head = scalar<std::string>(require(e, e["head"], "head", "edge"), "edge head");
    if (e["capacity"]) es.capacity = scalar<int>(e["capacity"], "capacity");
    if (e["transit"]) es.transit = scalar<int>(e["transit"], "transit");
    for (const std::string* name : {&es.name, &es.tail, &es.head}) {
      if (!name->empty() && name->front() == '~') {
        throw ParseError(line_of(e), "names starting with '~' are reserved: '" + *name + "'");
      }
    }
    if (es.capacity < 1 || es.transit < 1) {
      throw ParseError(ErrorCode::kInvalidNetwork, line_of(e),
                       "edge '" + es.name + "' needs capacity and transit of at least 1");
    }
    if (!edge_line.emplace(es.name, line_of(e)).second) {
      throw ParseError(ErrorCode::kInvalidNetwork, line_of(e),
                       "duplicate edge id '" + es.name + "'");
    }
    in_edges[es.head].push_back(es.name);
    spec.edges.push_back(std::move(es));
  }
  std::map<std::string, int> prio_line;
  if (const YAML::Node& p = n["priorities"]) {
    if (!p.IsMap()) throw ParseError(line_of(p), "network.priorities must be a mapping");
    for (const auto& kv : p) {
      const std::string v = kv.first.as<std::string>();
      spec.priorities[v] = name_list(kv.second, "priority of '" + v + "'");
      prio_line[v] = line_of(kv.first);
    }
  }
  for (const auto& [v, list] : spec.priorities) {
    for (const auto& e : list) {
      if (!edge_line.count(e)) {
        throw ParseError(ErrorCode::kUnresolvedReference, prio_line[v],
                         "priority of '" + v + "' names unknown edge '" + e + "'");
      }
    }
  }
  for (const auto& [v, ins] : in_edges) {
    auto it = spec.priorities.find(v);
    if (ins.size() < 2 && it == spec.priorities.end()) continue;
    std::vector<std::string> want = ins, got;
    if (it != spec.priorities.end()) got = it->second;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) {
      const int line = it != spec.priorities.end() ? prio_line[v] : line_of(n);
      throw ParseError(ErrorCode::kIncompletePriorityOrder, line,
                       "priority at vertex '" + v + "' must list each incoming edge exactly once");
    }
  }
  try {
    validate_and_stats(spec);
  } catch (const Error& err) {
    throw ParseError(err.code(), line_of(n), err.what());
  }
  return spec;
}

InflowSchedule parse_inflow(const YAML::Node& n) {
  if (!n.IsSequence()) throw ParseError(line_of(n), "inflow must be a list");
  InflowSchedule out;
  for (const auto& b : n) {
    expect_keys(b, {"time", "agents"}, "inflow entry");
    InflowBatch batch;
    batch.time = scalar<Time>(require(b, b["time"], "time", "inflow entry"), "inflow time");
    batch.agents = name_list(require(b, b["agents"], "agents", "inflow entry"), "inflow agents");
    if (batch.time < 1 || batch.agents.empty() || (!out.empty() && batch.time <= out.back().time)) {
      throw ParseError(ErrorCode::kInvalidSchedule, line_of(b),
                       "inflow times must start at 1, increase strictly and carry agents");
    }
    out.push_back(std::move(batch));
  }
  return out;
}

ConfigurationSpec parse_configuration(const YAML::Node& n) {
  expect_keys(n, {"time", "queues"}, "configuration");
  ConfigurationSpec out;
  if (n["time"]) out.time = scalar<Time>(n["time"], "configuration time");
  const YAML::Node& q = require(n, n["queues"], "queues", "configuration");
  if (!q.IsMap()) throw ParseError(line_of(q), "configuration.queues must be a mapping");
  for (const auto& kv : q) {
    const std::string e = kv.first.as<std::string>();
    out.queues.push_back({e, name_list(kv.second, "queue of '" + e + "'")});
  }
  return out;
}

ScenarioParams parse_params(const YAML::Node& n) {
  expect_keys(n, {"horizon", "seed", "samples", "guard", "depth"}, "params");
  ScenarioParams p;
  if (n["horizon"]) p.horizon = scalar<Time>(n["horizon"], "horizon");
  if (n["seed"]) p.seed = scalar<std::uint64_t>(n["seed"], "seed");
  if (n["samples"]) p.samples = scalar<int>(n["samples"], "samples");
  if (n["guard"]) p.guard = scalar<std::size_t>(n["guard"], "guard");
  if (n["depth"]) p.depth = scalar<int>(n["depth"], "depth");
  return p;
}

// Checks agent and edge names that can be resolved without building Ḡ.
void check_references(const Scenario& s, const YAML::Node& root) {
  std::set<std::string> edges;
  for (const auto& e : s.network.edges) edges.insert(e.name);
  std::set<std::string> agents;
  for (const auto& b : s.inflow) agents.insert(b.agents.begin(), b.agents.end());
  if (s.configuration) {
    for (const auto& q : s.configuration->queues) {
      agents.insert(q.agents.begin(), q.agents.end());
    }
  }
  if (const YAML::Node& p = root["profile"]) {
    for (const auto& kv : p) {
      const std::string a = kv.first.as<std::string>();
      if (!agents.count(a)) {
        throw ParseError(ErrorCode::kUnresolvedReference, line_of(kv.first),
                         "profile names unknown agent '" + a + "'");
      }
    }
  }
  if (s.configuration) {
    for (const auto& q : s.configuration->queues) {
      if (!edges.count(q.edge)) {
        // Lane names of normalized edges are checked when the instance is built.
        if (q.edge.find('/') == std::string::npos) {
          throw ParseError(ErrorCode::kUnresolvedReference, line_of(root["configuration"]),
                           "queue on unknown edge '" + q.edge + "'");
        }
      }
    }
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.mark.line + 1, e.msg);
  }
  if (!root || root.IsNull()) throw ParseError(0, "empty scenario");
  expect_keys(root, {"name", "network", "inflow", "configuration", "profile", "params"},
              "scenario");
  Scenario s;
  if (root["name"]) s.name = scalar<std::string>(root["name"], "name");
  s.network = parse_network(require(root, root["network"], "network", "scenario"));
  if (root["inflow"]) s.inflow = parse_inflow(root["inflow"]);
  if (root["configuration"]) s.configuration = parse_configuration(root["configuration"]);
  if (s.inflow.empty() == !s.configuration) {
    throw ParseError(line_of(root), "give exactly one of 'inflow' and 'configuration'");
  }
  if (const YAML::Node& p = root["profile"]) {
    if (!p.IsMap()) throw ParseError(line_of(p), "profile must be a mapping");
    for (const auto& kv : p) {
      const std::string a = kv.first.as<std::string>();
      s.profile.emplace_back(a, name_list(kv.second, "path of '" + a + "'"));
    }
  }
  if (root["params"]) s.params = parse_params(root["params"]);
  check_references(s, root);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  if (!s.name.empty()) out << YAML::Key << "name" << YAML::Value << s.name;
  out << YAML::Key << "network" << YAML::Value << YAML::BeginMap;
  if (!s.network.vertices.empty()) {
    out << YAML::Key << "vertices" << YAML::Value << YAML::Flow << s.network.vertices;
  }
  out << YAML::Key << "origin" << YAML::Value << s.network.origin;
  out << YAML::Key << "destination" << YAML::Value << s.network.destination;
  out << YAML::Key << "edges" << YAML::Value << YAML::BeginSeq;
  for (const auto& e : s.network.edges) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "id" << YAML::Value << e.name
        << YAML::Key << "tail" << YAML::Value << e.tail << YAML::Key << "head" << YAML::Value
        << e.head;
    if (e.capacity != 1) out << YAML::Key << "capacity" << YAML::Value << e.capacity;
    if (e.transit != 1) out << YAML::Key << "transit" << YAML::Value << e.transit;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  if (!s.network.priorities.empty()) {
    out << YAML::Key << "priorities" << YAML::Value << YAML::BeginMap;
    for (const auto& [v, list] : s.network.priorities) {
      out << YAML::Key << v << YAML::Value << YAML::Flow << list;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  if (!s.inflow.empty()) {
    out << YAML::Key << "inflow" << YAML::Value << YAML::BeginSeq;
    for (const auto& b : s.inflow) {
      out << YAML::Flow << YAML::BeginMap << YAML::Key << "time" << YAML::Value << b.time
          << YAML::Key << "agents" << YAML::Value << YAML::Flow << b.agents << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  if (s.configuration) {
    out << YAML::Key << "configuration" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "time" << YAML::Value << s.configuration->time;
    out << YAML::Key << "queues" << YAML::Value << YAML::BeginMap;
    for (const auto& q : s.configuration->queues) {
      out << YAML::Key << q.edge << YAML::Value << YAML::Flow << q.agents;
    }
    out << YAML::EndMap << YAML::EndMap;
  }
  if (!s.profile.empty()) {
    out << YAML::Key << "profile" << YAML::Value << YAML::BeginMap;
    for (const auto& [a, path] : s.profile) {
      out << YAML::Key << a << YAML::Value << YAML::Flow << path;
    }
    out << YAML::EndMap;
  }
  const ScenarioParams defaults;
  if (!(s.params == defaults)) {
    out << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
    if (s.params.horizon != defaults.horizon) out << YAML::Key << "horizon" << YAML::Value << s.params.horizon;
    if (s.params.seed != defaults.seed) out << YAML::Key << "seed" << YAML::Value << s.params.seed;
    if (s.params.samples != defaults.samples) out << YAML::Key << "samples" << YAML::Value << s.params.samples;
    if (s.params.guard != defaults.guard) out << YAML::Key << "guard" << YAML::Value << s.params.guard;
    if (s.params.depth != defaults.depth) out << YAML::Key << "depth" << YAML::Value << s.params.depth;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::uint64_t scenario_hash(const Scenario& scenario) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : serialize_scenario(scenario)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

PathProfile resolve_profile(
    const Instance& inst,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& paths) {
  const Network& g = inst.net.graph();
  PathProfile out(inst.num_agents());
  for (const auto& [name, edges] : paths) {
    const auto a = inst.find_agent(name);
    if (!a) throw Error(ErrorCode::kUnresolvedReference, "unknown agent '" + name + "'");
    if (!inst.initial.present(*a)) continue;
    Path p;
    for (const auto& en : edges) {
      if (const auto e = g.find_edge(en)) {
        p.push_back(*e);
      } else if (const auto orig = inst.net.unit().original.find_edge(en)) {
        // A split edge named by its original name stands for lane 0.
        const auto& lane = inst.net.unit().lanes[orig->idx()].front();
        p.insert(p.end(), lane.begin(), lane.end());
      } else {
        throw Error(ErrorCode::kUnresolvedReference, "unknown edge '" + en + "'");
      }
    }
    EdgeId cur = inst.initial.locate(*a)->edge;
    if (p.empty() || p.front() != cur) {
      Path chain;
      while (!inst.net.is_g_edge(cur)) {
        chain.push_back(cur);
        if (g.head(cur) == inst.net.g_origin()) break;
        cur = g.out_edges(g.head(cur)).front();
      }
      p.insert(p.begin(), chain.begin(), chain.end());
    }
    check_path(g, inst.initial, *a, p);
    out[a->idx()] = std::move(p);
  }
  return out;
}

std::string path_to_string(const Instance& inst, const Path& path, bool with_chain) {
  std::string out;
  for (EdgeId e : path) {
    if (!with_chain && !inst.net.is_g_edge(e)) continue;
    if (!out.empty()) out += ' ';
    out += inst.net.graph().edge_name(e);
  }
  return out;
}

std::vector<std::pair<std::string, std::vector<std::string>>> profile_to_names(
    const Instance& inst, const PathProfile& profile) {
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  for (std::size_t a = 0; a < profile.size(); ++a) {
    if (profile[a].empty()) continue;
    std::vector<std::string> names;
    for (EdgeId e : profile[a]) {
      if (inst.net.is_g_edge(e)) names.push_back(inst.net.graph().edge_name(e));
    }
    out.emplace_back(inst.agent_name(AgentId(a)), std::move(names));
  }
  return out;
}

LoadedScenario instantiate(const Scenario& scenario) {
  LoadedScenario out;
  out.scenario = scenario;
  const UnitNetwork unit = normalize_to_unit(Network(scenario.network));
  if (scenario.configuration) {
    out.instance = build_configured(unit, scenario.configuration->time, scenario.configuration->queues);
  } else {
    out.instance = build_extended(unit, scenario.inflow);
  }
  out.has_profile = !scenario.profile.empty();
  out.profile = resolve_profile(out.instance, scenario.profile);
  return out;
}

}  // namespace dqgame
