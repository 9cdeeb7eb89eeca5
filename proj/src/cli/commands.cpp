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

#include "dqgame/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "dqgame/analysis/analysis.hpp"
#include "dqgame/cli/fixtures.hpp"
#include "dqgame/spe/spe.hpp"

namespace dqgame {
namespace {

namespace fs = std::filesystem;

class Report {
 public:
  template <class T>
  void kv(const std::string& key, const T& value) {
    body_ << key << ": " << value << '\n';
  }
  void line(const std::string& text) { body_ << text << '\n'; }
  std::string str() const { return body_.str(); }

 private:
  std::ostringstream body_;
};

struct Context {
  const CommandOptions& opts;
  std::ostream& log;
  Scenario scenario;
  LoadedScenario loaded;
  Report report;
  Time horizon = 0;
  std::uint64_t seed = 1;
  int samples = 50;
  std::size_t guard = 1000000;
  int depth = -1;

  const Network& graph() const { return loaded.graph(); }
  const Instance& inst() const { return loaded.instance; }
  const Configuration& start() const { return loaded.instance.initial; }

  void write_file(const std::string& name, const std::function<void(std::ostream&)>& fn) const {
    if (opts.out_dir.empty()) return;
    std::ofstream out(fs::path(opts.out_dir) / name);
    if (!out) throw Error(ErrorCode::kInternal, "cannot write " + name);
    fn(out);
  }
};

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << "0x" << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

Time start_of(const Instance& inst, AgentId a) {
  const Time entry = inst.agents[a.idx()].entry_time;
  return entry >= 0 ? entry : inst.initial.time();
}

void require_profile(const Context& ctx, std::optional<AgentId> except = std::nullopt) {
  for (AgentId a : ctx.start().present_agents()) {
    if (except && *except == a) continue;
    if (ctx.loaded.profile[a.idx()].empty()) {
      throw Error(ErrorCode::kInvalidPath,
                  "scenario profile has no path for agent '" + ctx.inst().agent_name(a) + "'");
    }
  }
}

void print_paths(Context& ctx, const PathProfile& paths, const RoutingTrace& trace,
                 const std::vector<AgentId>& order) {
  for (AgentId a : order) {
    if (paths[a.idx()].empty()) continue;
    const Time exit = trace.exit_time(a);
    ctx.report.line("  " + ctx.inst().agent_name(a) + ": " +
                    path_to_string(ctx.inst(), paths[a.idx()]) + " | exit " +
                    std::to_string(exit) + " cost " + std::to_string(exit - start_of(ctx.inst(), a)));
  }
}

std::vector<AgentId> present_order(const Context& ctx) { return ctx.start().present_agents(); }

int cmd_simulate(Context& ctx) {
  require_profile(ctx);
  RunOptions ro;
  ro.record_queues = true;
  if (ctx.horizon > 0) ro.horizon = ctx.horizon;
  const RoutingTrace trace = run_paths(ctx.graph(), ctx.start(), ctx.loaded.profile, ro);
  ctx.report.line("paths:");
  print_paths(ctx, ctx.loaded.profile, trace, present_order(ctx));
  ctx.write_file("trace.tsv", [&](std::ostream& o) { write_trace_tsv(o, ctx.inst(), trace); });
  ctx.write_file("queues.tsv", [&](std::ostream& o) { write_queue_tsv(o, ctx.inst(), trace); });
  return 0;
}

int cmd_solve(Context& ctx) {
  const DominatingProfile dom = iterative_dominating_profile(ctx.graph(), ctx.start());
  const RoutingTrace trace = run_paths(ctx.graph(), ctx.start(), dom.paths);
  ctx.report.line("dominating profile (assignment order):");
  print_paths(ctx, dom.paths, trace, dom.order);
  const NeVerdict v = verify_ne(ctx.graph(), ctx.start(), dom.paths);
  ctx.report.kv("is_ne", v.is_ne ? "yes" : "no");
  ctx.write_file("trace.tsv", [&](std::ostream& o) { write_trace_tsv(o, ctx.inst(), trace); });
  Scenario solved = ctx.scenario;
  solved.profile = profile_to_names(ctx.inst(), dom.paths);
  ctx.write_file("solution.yaml", [&](std::ostream& o) { o << serialize_scenario(solved); });
  return v.is_ne ? 0 : 1;
}

int cmd_best_response(Context& ctx) {
  if (ctx.opts.agent.empty()) throw Error(ErrorCode::kUnknownAgent, "best-response needs --agent");
  const auto zeta = ctx.inst().find_agent(ctx.opts.agent);
  if (!zeta || !ctx.start().present(*zeta)) {
    throw Error(ErrorCode::kUnknownAgent, "agent '" + ctx.opts.agent + "' is not present");
  }
  require_profile(ctx, zeta);
  const ArrivalTable table = earliest_arrival_table(ctx.graph(), ctx.start(), ctx.loaded.profile, *zeta);
  const Path best = table.path_to(ctx.graph(), ctx.graph().destination());
  ctx.report.kv("agent", ctx.opts.agent);
  ctx.report.kv("path", path_to_string(ctx.inst(), best));
  ctx.report.kv("arrival", table.at(ctx.graph().destination()));
  ctx.report.line("earliest arrival per vertex:");
  for (std::size_t v = 0; v < ctx.graph().num_vertices(); ++v) {
    if (table.tau[v] == kNever || !ctx.inst().net.is_g_vertex(VertexId(v))) continue;
    ctx.report.line("  " + ctx.graph().vertex_name(VertexId(v)) + " " + std::to_string(table.tau[v]));
  }
  return 0;
}

int cmd_verify_ne(Context& ctx) {
  require_profile(ctx);
  const NeVerdict v = verify_ne(ctx.graph(), ctx.start(), ctx.loaded.profile);
  const RoutingTrace trace = run_paths(ctx.graph(), ctx.start(), ctx.loaded.profile);
  ctx.report.line("paths:");
  print_paths(ctx, ctx.loaded.profile, trace, present_order(ctx));
  ctx.report.kv("is_ne", v.is_ne ? "yes" : "no");
  if (v.witness) {
    const Deviation& d = *v.witness;
    ctx.report.kv("deviation_agent", ctx.inst().agent_name(d.agent));
    ctx.report.kv("deviation_path", path_to_string(ctx.inst(), d.path));
    ctx.report.kv("deviation_exit", std::to_string(d.current) + " -> " + std::to_string(d.improved));
  }
  return v.is_ne ? 0 : 1;
}

int cmd_enumerate_ne(Context& ctx) {
  const ProfileTable table(ctx.graph(), ctx.start(), ctx.guard);
  std::vector<std::size_t> nes;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.is_ne(i)) nes.push_back(i);
  }
  ctx.report.kv("profiles", table.size());
  ctx.report.kv("nash_equilibria", nes.size());
  for (std::size_t n = 0; n < nes.size(); ++n) {
    std::string costs;
    std::string line = "ne " + std::to_string(n + 1) + ":";
    const PathProfile p = table.profile(nes[n]);
    for (std::size_t k = 0; k < table.agents().size(); ++k) {
      const AgentId a = table.agents()[k];
      line += (k ? "; " : " ") + ctx.inst().agent_name(a) + "=" + path_to_string(ctx.inst(), p[a.idx()]);
      costs += (k ? "," : "") + std::to_string(table.exit_time(nes[n], k) - start_of(ctx.inst(), a));
    }
    ctx.report.line(line + " | costs (" + costs + ")");
  }
  ctx.write_file("ne.tsv", [&](std::ostream& o) {
    o << "ne\tagent\tpath\texit\tcost\n";
    for (std::size_t n = 0; n < nes.size(); ++n) {
      const PathProfile p = table.profile(nes[n]);
      for (std::size_t k = 0; k < table.agents().size(); ++k) {
        const AgentId a = table.agents()[k];
        const Time exit = table.exit_time(nes[n], k);
        o << n + 1 << '\t' << ctx.inst().agent_name(a) << '\t'
          << path_to_string(ctx.inst(), p[a.idx()]) << '\t' << exit << '\t'
          << exit - start_of(ctx.inst(), a) << '\n';
      }
    }
  });
  return nes.empty() ? 1 : 0;
}

int run_properties(Context& ctx, const PathProfile& profile) {
  PropertyOptions po;
  po.samples = ctx.samples;
  po.seed = ctx.seed;
  po.exhaustive = ctx.opts.exhaustive;
  po.guard = ctx.guard;
  const PropertyReport rep = check_properties(ctx.inst(), ctx.start(), profile, po);
  for (const PropertyCheck& c : rep.checks) {
    const std::string verdict = !c.applicable ? "n/a" : c.holds ? "holds" : "FAILS";
    ctx.report.line(c.name + ": " + verdict + " (" + std::to_string(c.cases) + " cases)");
    if (c.witness) {
      ctx.report.line("  witness: " + c.witness->detail);
      Scenario w = ctx.scenario;
      w.profile = profile_to_names(ctx.inst(), c.witness->profile);
      ctx.write_file("witness_" + c.name + ".yaml", [&](std::ostream& o) { o << serialize_scenario(w); });
    }
  }
  return rep.all_hold() ? 0 : 1;
}

int cmd_properties(Context& ctx) {
  if (!ctx.opts.replay.empty()) {
    // A witness file is a scenario whose profile reproduces the violation.
    require_profile(ctx);
    const RoutingTrace trace = run_paths(ctx.graph(), ctx.start(), ctx.loaded.profile);
    ctx.report.line("replayed paths:");
    print_paths(ctx, ctx.loaded.profile, trace, present_order(ctx));
    ctx.write_file("trace.tsv", [&](std::ostream& o) { write_trace_tsv(o, ctx.inst(), trace); });
    return run_properties(ctx, ctx.loaded.profile);
  }
  PathProfile profile = ctx.loaded.profile;
  if (!ctx.loaded.has_profile) {
    profile = iterative_dominating_profile(ctx.graph(), ctx.start()).paths;
    ctx.report.line("profile: dominating profile (scenario has none)");
  }
  require_ne(ctx.graph(), ctx.start(), profile);
  return run_properties(ctx, profile);
}

int cmd_spe_audit(Context& ctx) {
  std::unique_ptr<StrategyOracle> oracle;
  const std::string& kind = ctx.opts.oracle;
  if (kind == "sigma-star") {
    oracle = std::make_unique<SigmaStar>(ctx.graph());
  } else if (kind == "lowest-priority") {
    oracle = std::make_unique<LowestPriorityOracle>(ctx.graph());
  } else if (kind == "vicious") {
    oracle = std::make_unique<ViciousOracle>(ctx.inst());
  } else if (kind == "ne-based") {
    PathProfile ne = ctx.loaded.profile;
    if (!ctx.loaded.has_profile) ne = iterative_dominating_profile(ctx.graph(), ctx.start()).paths;
    require_ne(ctx.graph(), ctx.start(), ne);
    oracle = std::make_unique<NeBasedSpe>(ctx.graph(), ctx.start(), ne);
  } else {
    throw Error(ErrorCode::kInvalidAction, "unknown oracle '" + kind + "'");
  }
  AuditOptions ao;
  ao.exhaustive = ctx.opts.exhaustive;
  ao.depth = ctx.depth;
  ao.samples = ctx.samples;
  ao.seed = ctx.seed;
  const AuditResult r = one_deviation_audit(ctx.graph(), ctx.start(), *oracle, ao);
  const PlayResult on_path = play(ctx.graph(), *oracle, root_history(ctx.start()));
  ctx.report.kv("oracle", oracle->name());
  ctx.report.kv("mode", ao.exhaustive ? "exhaustive" : "sampled");
  ctx.report.kv("depth", r.depth);
  ctx.report.kv("histories", r.nodes);
  ctx.report.kv("deviations", r.deviations);
  ctx.report.kv("truncated", r.truncated ? "yes" : "no");
  ctx.report.kv("verdict", r.passed ? "pass" : "fail");
  ctx.report.line("induced play:");
  PathProfile induced(on_path.trace.agents.size());
  for (std::size_t a = 0; a < induced.size(); ++a) induced[a] = on_path.trace.agents[a].path;
  print_paths(ctx, induced, on_path.trace, present_order(ctx));
  if (r.witness) {
    const AuditWitness& w = *r.witness;
    std::string act = w.deviation.kind == Action::Kind::kMove
                          ? "move " + ctx.graph().edge_name(w.deviation.edge)
                          : w.deviation.kind == Action::Kind::kExit ? "exit" : "stay";
    ctx.report.kv("witness_agent", ctx.inst().agent_name(w.agent));
    ctx.report.kv("witness_action", act);
    ctx.report.kv("witness_exit", std::to_string(w.prescribed_exit) + " -> " + std::to_string(w.deviation_exit));
    ctx.report.line("witness history:");
    for (const auto& k : w.history) ctx.report.line("  " + k);
  }
  return r.passed && !r.truncated ? 0 : 1;
}

void print_bound(Context& ctx, const BoundReport& r) {
  ctx.report.kv("horizon", r.horizon);
  ctx.report.kv("agents", r.agents);
  ctx.report.kv("window", r.window);
  ctx.report.kv("max_occupancy", r.max_occupancy);
  ctx.report.kv("max_queue", r.max_queue_overall);
  ctx.report.kv("stabilization", r.stabilization);
  ctx.report.kv("bounded", r.bounded ? "yes" : "no");
  ctx.report.kv("max_latency", r.max_latency);
  ctx.report.kv("latency_stabilization", r.latency_stabilization);
  ctx.report.kv("latency_bounded", r.latency_bounded ? "yes" : "no");
  ctx.report.kv("conservation", r.conservation ? "yes" : "no");
  ctx.report.kv("arrivals_within_max_indegree", r.observation_arrivals ? "yes" : "no");
  ctx.report.kv("full_cut_drains", r.cut_drain ? "yes" : "no");
  for (const RatioVerdict& v : r.ratio) {
    ctx.report.line("parallel node " + std::to_string(v.node) + ": " + (v.holds ? "holds" : "FAILS") +
                    " (" + std::to_string(v.checks) + " steps, tightest n1=" +
                    std::to_string(v.worst_n1) + " n2=" + std::to_string(v.worst_n2) + ")");
  }
  ctx.write_file("occupancy.tsv", [&](std::ostream& o) { write_occupancy_tsv(o, r.occupancy); });
  ctx.write_file("latency.tsv", [&](std::ostream& o) { write_latency_tsv(o, r); });
}

int cmd_queue_bound(Context& ctx) {
  const Network net(ctx.scenario.network);
  const Time horizon = ctx.horizon > 0 ? ctx.horizon : 1000;
  int width = ctx.opts.width;
  if (width <= 0) {
    const SPDecomposition dec = require_series_parallel(normalize_to_unit(net).net);
    width = static_cast<int>(dec.nodes[dec.root].cut.edges.size());
  }
  ctx.report.kv("inflow_width", width);
  const BoundReport r = queue_bound_experiment(net, constant_inflow(width, horizon), horizon);
  print_bound(ctx, r);
  bool ok = r.bounded && r.conservation && r.observation_arrivals && r.cut_drain;
  for (const RatioVerdict& v : r.ratio) ok = ok && v.holds;
  return ok ? 0 : 1;
}

int cmd_spe_bound(Context& ctx) {
  const Network net(ctx.scenario.network);
  const Time horizon = ctx.horizon > 0 ? ctx.horizon : 1000;
  int width = ctx.opts.width;
  if (width <= 0) {
    const UnitNetwork unit = normalize_to_unit(net);
    std::vector<EdgeId> all;
    for (std::size_t e = 0; e < unit.net.num_edges(); ++e) all.push_back(EdgeId(e));
    width = static_cast<int>(max_flow(unit.net, all, unit.net.origin(), unit.net.destination()));
  }
  ctx.report.kv("inflow_width", width);
  const BoundReport r = spe_bound_experiment(net, constant_inflow(width, horizon), horizon);
  print_bound(ctx, r);
  return r.latency_bounded && r.conservation ? 0 : 1;
}

struct Claim {
  std::string text;
  bool holds;
};

std::vector<Claim> fixture_claims(const std::string& name) {
  const LoadedScenario l = instantiate(*fixture(name));
  const Network& g = l.graph();
  const Configuration& c = l.instance.initial;
  auto agent = [&](const char* n) { return *l.instance.find_agent(n); };
  std::vector<Claim> out;
  if (name == "fig1") {
    const auto nes = enumerate_all_ne(g, c);
    bool all_three = !nes.empty();
    for (const auto& p : nes) {
      const RoutingTrace t = run_paths(g, c, p);
      for (AgentId a : c.present_agents()) all_three = all_three && t.exit_time(a) - 1 == 3;
    }
    out.push_back({"six NEs, each with costs (3,3)", nes.size() == 6 && all_three});
    const RoutingTrace t = run_paths(g, c, l.profile);
    out.push_back({"(ovw1d, ou1w1d) costs (3,4) and is not an NE",
                   t.exit_time(agent("p1")) - 1 == 3 && t.exit_time(agent("p2")) - 1 == 4 &&
                       !verify_ne(g, c, l.profile).is_ne});
    ViciousOracle vicious(l.instance);
    const AuditResult r = one_deviation_audit(g, c, vicious);
    const PlayResult p = play(g, vicious, root_history(c));
    out.push_back({"vicious strategy passes the one-deviation audit with costs (3,4)",
                   r.passed && !r.truncated && p.exit[agent("p1").idx()] - 1 == 3 &&
                       p.exit[agent("p2").idx()] - 1 == 4});
  } else if (name == "fig2") {
    const DominatingProfile dom = iterative_dominating_profile(g, c);
    std::string listed;
    for (AgentId a : dom.order) {
      listed += (listed.empty() ? "" : ", ") + path_to_string(l.instance, dom.paths[a.idx()], true);
    }
    const std::string want =
        "v2y2 y2d, v1y1 y1d, v2y2 y2d, v1y1 y1d, v2y2 y2d, v1y1 y1d, ojw ww2 w2x2 x2y2 y2d, "
        "okv vv1 v1y1 y1d, oiu uu2 u2v2 v2y2 y2d";
    out.push_back({"dominating profile is (" + want + ")", listed == want});
  } else if (name == "fig3") {
    const RoutingTrace t = run_paths(g, c, l.profile);
    const Time r = c.time();
    out.push_back({"i, j, k all reach d at r+5 under an NE",
                   t.exit_time(agent("i")) == r + 5 && t.exit_time(agent("j")) == r + 5 &&
                       t.exit_time(agent("k")) == r + 5 && verify_ne(g, c, l.profile).is_ne});
    std::vector<bool> keep(l.instance.num_agents(), true);
    keep[agent("k").idx()] = false;
    PathProfile p = l.profile;
    p[agent("k").idx()].clear();
    const Configuration ck = c.restricted(keep);
    const RoutingTrace tk = run_paths(g, ck, p);
    out.push_back({"without k: j reaches d at r+6, i at r+5",
                   tk.exit_time(agent("j")) == r + 6 && tk.exit_time(agent("i")) == r + 5 &&
                       verify_ne(g, ck, p).is_ne});
  }
  return out;
}

int cmd_fixtures(Context& ctx) {
  bool ok = true;
  for (const std::string& name : fixture_names()) {
    if (!ctx.opts.scenario.empty() && ctx.opts.scenario != name) continue;
    ctx.write_file(name + ".yaml", [&](std::ostream& o) { o << serialize_scenario(*fixture(name)); });
    for (const Claim& c : fixture_claims(name)) {
      ctx.report.line(name + ": " + (c.holds ? "PASS " : "FAIL ") + c.text);
      ok = ok && c.holds;
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

std::vector<std::string> command_names() {
  return {"simulate",    "solve",     "best-response", "verify-ne",  "enumerate-ne",
          "properties",  "spe-audit", "queue-bound",   "spe-bound",  "fixtures"};
}

Scenario resolve_scenario(const std::string& ref) {
  if (!fs::exists(ref)) {
    if (auto f = fixture(ref)) return *f;
  }
  return load_scenario(ref);
}

int run_command(const CommandOptions& opts, std::ostream& log) {
  static const std::map<std::string, int (*)(Context&)> table = {
      {"simulate", cmd_simulate},       {"solve", cmd_solve},
      {"best-response", cmd_best_response}, {"verify-ne", cmd_verify_ne},
      {"enumerate-ne", cmd_enumerate_ne}, {"properties", cmd_properties},
      {"spe-audit", cmd_spe_audit},     {"queue-bound", cmd_queue_bound},
      {"spe-bound", cmd_spe_bound},     {"fixtures", cmd_fixtures}};
  auto it = table.find(opts.command);
  if (it == table.end()) throw Error(ErrorCode::kInvalidAction, "unknown command '" + opts.command + "'");
  if (!opts.out_dir.empty()) fs::create_directories(opts.out_dir);

  Context ctx{opts, log, {}, {}, {}, 0, 1, 50, 1000000, -1};
  ctx.report.kv("tool", std::string("dqgame ") + kToolVersion);
  ctx.report.kv("command", opts.command);
  if (opts.command != "fixtures") {
    const std::string ref = opts.replay.empty() ? opts.scenario : opts.replay;
    ctx.scenario = resolve_scenario(ref);
    const ScenarioParams& p = ctx.scenario.params;
    ctx.horizon = opts.horizon.value_or(p.horizon);
    ctx.seed = opts.seed.value_or(p.seed);
    ctx.samples = opts.samples.value_or(p.samples);
    ctx.guard = opts.guard.value_or(p.guard);
    ctx.depth = opts.depth.value_or(p.depth);
    ctx.report.kv("scenario", ctx.scenario.name.empty() ? ref : ctx.scenario.name);
    ctx.report.kv("scenario_hash", hex(scenario_hash(ctx.scenario)));
    ctx.report.kv("seed", ctx.seed);
    const bool builds_instance = opts.command != "queue-bound" && opts.command != "spe-bound";
    if (builds_instance) {
      ctx.loaded = instantiate(ctx.scenario);
      std::vector<bool> keep(ctx.loaded.instance.num_agents(), true);
      for (const std::string& name : opts.without_agents) {
        const auto a = ctx.loaded.instance.find_agent(name);
        if (!a) throw Error(ErrorCode::kUnknownAgent, "unknown agent '" + name + "'");
        keep[a->idx()] = false;
        ctx.loaded.profile[a->idx()].clear();
        ctx.report.kv("without_agent", name);
      }
      ctx.loaded.instance.initial = ctx.loaded.instance.initial.restricted(keep);
    }
  }
  const int status = it->second(ctx);
  ctx.report.kv("status", status == 0 ? "pass" : "fail");
  const std::string text = ctx.report.str();
  log << text;
  ctx.write_file("report.txt", [&](std::ostream& o) { o << text; });
  return status;
}

}  // namespace dqgame
