// ivnet: analyze, simulate and check in-vehicle network designs.
//
// Exit status: 0 success / all checks pass, 1 a bound violation or golden
// mismatch, 2 an input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ivnet/document.hpp"
#include "ivnet/freerider.hpp"
#include "ivnet/propagate.hpp"
#include "ivnet/scenarios.hpp"
#include "ivnet/sim.hpp"
#include "ivnet/tree.hpp"

using namespace ivnet;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  Topology topology;
  Partition groups;
  std::optional<ScenarioBundle> bundle;
};

Loaded load(const std::string& input) {
  for (const auto& name : scenario_names()) {
    if (input == name) {
      ScenarioBundle b = scenario_by_name(name);
      Loaded l{b.topology, b.groups, std::move(b)};
      return l;
    }
  }
  std::ifstream in(input);
  if (!in) throw InputError("cannot open '" + input + "' (not a file or builtin scenario)");
  std::stringstream ss;
  ss << in.rdbuf();
  TopologyDocument doc = parse_document(ss.str());
  const ValidationReport v = validate_topology(doc.topology);
  if (!v.valid()) {
    std::string msg = "invalid topology:";
    for (const auto& e : v.violations) msg += "\n  " + std::string(to_string(e.kind)) + " [" + e.subject + "]: " + e.message;
    throw InputError(msg);
  }
  Partition groups = doc.groups ? *doc.groups : Partition::singletons(doc.topology);
  return {std::move(doc.topology), std::move(groups), std::nullopt};
}

std::vector<Mode> modes_for(const std::string& which) {
  if (which == "exact") return {Mode::exact};
  if (which == "small") return {Mode::small_flow};
  return {Mode::exact, Mode::small_flow};
}

std::string us(const Rational& s) { return to_decimal(s * 1'000'000, 3); }
std::string bits(const Rational& b) { return to_decimal(b, 1); }

std::string percent(const Rational& a, const Rational& b) {
  if (b == 0) return "-";
  return to_decimal((a - b) / b * 100, 2) + "%";
}

int cmd_analyze(const std::string& input, const std::string& which, bool machine) {
  Loaded in = load(input);
  std::vector<AnalysisReport> reports;
  for (Mode m : modes_for(which)) reports.push_back(analyze(in.topology, in.groups, m));
  if (machine) {
    if (reports.size() == 1) {
      std::cout << report_to_json(reports.front());
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : reports) arr.push_back(nlohmann::json::parse(report_to_json(r)));
      std::cout << arr.dump(2) << '\n';
    }
    return 0;
  }
  const bool both = reports.size() == 2;
  std::cout << std::left << std::setw(18) << "port" << std::setw(7) << "class";
  for (const auto& r : reports)
    std::cout << std::setw(16) << (std::string(to_string(r.mode)) + " us") << std::setw(16) << (std::string(to_string(r.mode)) + " bits");
  if (both) std::cout << "delta";
  std::cout << '\n';
  for (std::size_t i = 0; i < reports.front().port_bounds.size(); ++i) {
    const auto& p = reports.front().port_bounds[i];
    std::cout << std::setw(18) << p.link_id << std::setw(7) << link_class(p.link_id);
    for (const auto& r : reports)
      std::cout << std::setw(16) << us(r.port_bounds[i].delay_bound) << std::setw(16) << bits(r.port_bounds[i].storage_bound);
    if (both) std::cout << percent(reports[0].port_bounds[i].delay_bound, reports[1].port_bounds[i].delay_bound);
    std::cout << '\n';
  }
  std::cout << "\nswitch memory\n";
  for (const auto& [id, b] : reports.front().switch_memory) {
    std::cout << "  " << std::setw(16) << id;
    for (const auto& r : reports) std::cout << std::setw(16) << format_bits(r.switch_memory.at(id));
    if (both) std::cout << percent(b, reports[1].switch_memory.at(id));
    std::cout << '\n';
  }
  for (const auto& r : reports) {
    const PathLatency* worst = nullptr;
    for (const auto& p : r.path_latencies)
      if (!worst || p.latency > worst->latency) worst = &p;
    if (worst)
      std::cout << "\nworst path (" << to_string(r.mode) << "): " << worst->flow_id << " " << format_seconds(worst->latency);
  }
  if (in.bundle) {
    for (const auto& r : reports)
      std::cout << "\nreference route (" << to_string(r.mode) << "): "
                << format_seconds(end_to_end_bound(r, in.bundle->reference_route));
  }
  std::cout << "\n";
  for (const auto& n : reports.front().notes) std::cout << "note: " << n << '\n';
  return 0;
}

int cmd_simulate(const std::string& input, const std::string& horizon, std::optional<std::uint64_t> seed,
                 bool randomize, const std::string& trace_path, bool machine) {
  Loaded in = load(input);
  SimOptions opt;
  try {
    opt.horizon = parse_quantity(horizon);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad --horizon: ") + e.what());
  }
  std::vector<ShapedSource> sources = in.bundle ? in.bundle->sources : default_sources(in.topology);
  if (randomize || seed) randomize_offsets(sources, seed.value_or(0));
  std::ofstream trace;
  if (!trace_path.empty()) {
    trace.open(trace_path);
    if (!trace) throw InputError("cannot write trace file '" + trace_path + "'");
    opt.trace = &trace;
  }
  const SimResult result = run(in.topology, sources, opt);
  const ComplianceReport c = compare_with_bounds(result, analyze(in.topology, in.groups, Mode::exact));
  if (machine) {
    std::cout << sim_to_json(result, c);
  } else {
    std::cout << "horizon " << format_seconds(result.horizon) << ", " << result.events << " port events, "
              << (result.steady ? "steady" : "NOT steady") << '\n';
    std::cout << std::left << std::setw(20) << "subject" << std::setw(14) << "kind" << std::setw(16) << "measured"
              << std::setw(16) << "bound" << "slack\n";
    for (const auto& e : c.entries) {
      const bool delay = e.kind != "port_backlog";
      auto show = [&](const Rational& v) { return delay ? us(v) + " us" : bits(v) + " b"; };
      std::cout << std::setw(20) << e.subject << std::setw(14) << e.kind << std::setw(16) << show(e.measured)
                << std::setw(16) << show(e.bound) << show(e.slack()) << (e.ok() ? "" : "  VIOLATION") << '\n';
    }
    for (const auto& d : result.drop_log) std::cout << d << '\n';
    std::cout << (c.pass() ? "all measured values within bounds" : "BOUND VIOLATION") << '\n';
  }
  return c.pass() ? 0 : 1;
}

int cmd_tree(const std::string& input, const std::string& group, const std::string& link_id, bool fast_only,
             bool machine) {
  Loaded in = load(input);
  Topology t = fast_only && in.bundle ? fast_network(*in.bundle) : in.topology;
  const auto& groups = in.groups.groups();
  auto it = groups.find(group);
  if (it == groups.end()) throw InputError("unknown group '" + group + "'");
  std::vector<std::string> members;
  for (const auto& f : it->second)
    if (t.find_flow(f)) members.push_back(f);
  const InfluenceTree tree = build_influence_tree(t, members, link_id);
  const Bits a = max_leaf_burst(tree);
  const Bits bound = leaf_count_bound(tree, a);
  const Bits refined = refined_leaf_bound(tree);
  if (machine) {
    std::cout << tree_to_json(tree, bound, refined);
    return 0;
  }
  std::cout << render_tree_text(tree);
  std::cout << "leaves: " << tree.leaves().size() << ", depth " << tree.depth() << '\n';
  std::cout << "leaf-count bound (A = " << to_exact_string(a) << " b): " << to_exact_string(bound) << " b\n";
  std::cout << "refined bound: " << to_exact_string(refined) << " b\n";
  Partition sub;
  for (const auto& [g, fl] : groups)
    for (const auto& f : fl)
      if (t.find_flow(f)) sub.assign(g, f);
  const BurstMap bm = propagate_bursts(t, sub, Mode::exact);
  std::cout << "propagated exact burst: " << to_decimal(bm.at(group, link_id), 3) << " b\n";
  return 0;
}

int cmd_freerider(const std::string& input, const std::string& delay_budget, const std::string& memory_budget,
                  bool machine) {
  Loaded in = load(input);
  const Topology& t = in.topology;
  auto is_slow = [&](const FlowSpec& f) {
    const Node* from = t.find_node(t.link(f.route.front()).from);
    return from && from->tier == Tier::slow;
  };
  SlowOverlay overlay = overlay_from_topology(t, is_slow);
  // Only the fast network is checked: drop links that touch a slow device.
  std::erase_if(overlay.links, [&](const auto& entry) {
    const Link& l = t.link(entry.first);
    for (const auto& id : {l.from, l.to})
      if (const Node* n = t.find_node(id); n && n->tier == Tier::slow) return true;
    return false;
  });
  if (overlay.links.empty()) throw InputError("no slow flows (flows leaving slow-tier nodes) to overlay");
  FreeRiderBudgets budgets;
  try {
    budgets = {parse_quantity(delay_budget), parse_quantity(memory_budget)};
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad budget: ") + e.what());
  }
  const FreeRiderReport r = check_free_rider(t, overlay, budgets);
  std::cout << (machine ? free_rider_to_json(r) : render_free_rider(r));
  return r.pass() ? 0 : 1;
}

int cmd_report(const std::string& name, const std::string& which, bool machine) {
  const ScenarioBundle b = scenario_by_name(name);
  std::vector<GoldenResult> rows;
  for (Mode m : modes_for(which)) {
    auto part = evaluate_golden(b, m);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  if (machine) {
    std::cout << golden_to_json(rows);
  } else {
    std::cout << render_golden(rows);
    for (const auto& n : b.notes) std::cout << "note: " << n << '\n';
    std::size_t failed = 0;
    for (const auto& r : rows) failed += r.pass ? 0 : 1;
    std::cout << (failed == 0 ? "all golden values reproduced" : std::to_string(failed) + " golden value(s) not reproduced")
              << '\n';
  }
  return all_pass(rows) ? 0 : 1;
}

int cmd_export(const std::string& name, const std::string& out_path) {
  const ScenarioBundle b = scenario_by_name(name);
  const std::string doc = export_document(b.topology, &b.groups);
  if (out_path.empty()) {
    std::cout << doc;
  } else {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write '" + out_path + "'");
    out << doc;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worst-case delay and memory bounds for in-vehicle Ethernet designs"};
  app.require_subcommand(1);
  std::string input, format = "text", which = "both";

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  };
  auto add_modes = [&](CLI::App* c) {
    auto* g = c->add_option_group("mode");
    g->add_flag_callback("--exact", [&] { which = "exact"; }, "exact propagation only");
    g->add_flag_callback("--small-flow", [&] { which = "small"; }, "small-flow approximation only");
    g->add_flag_callback("--both", [&] { which = "both"; }, "both, with the relative difference (default)");
    g->require_option(0, 1);
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "per-port delay and storage bounds");
  analyze_cmd->add_option("input", input, "topology document or builtin scenario")->required();
  add_modes(analyze_cmd);
  add_format(analyze_cmd);

  std::string horizon = "0.1", trace_path;
  std::optional<std::uint64_t> seed;
  bool randomize = false;
  auto* sim_cmd = app.add_subcommand("simulate", "packet simulation checked against the exact bounds");
  sim_cmd->add_option("input", input, "topology document or builtin scenario")->required();
  sim_cmd->add_option("--horizon", horizon, "seconds of source activity (default 0.1)");
  sim_cmd->add_option("--seed", seed, "seed for randomized offsets");
  sim_cmd->add_flag("--randomize-offsets", randomize, "draw source offsets at random");
  sim_cmd->add_option("--trace", trace_path, "write the per-event trace here");
  add_format(sim_cmd);

  std::string group, link_id;
  bool fast_only = false;
  auto* tree_cmd = app.add_subcommand("tree", "influence tree and leaf-count burst bound");
  tree_cmd->add_option("input", input, "topology document or builtin scenario")->required();
  tree_cmd->add_option("--group", group, "group id")->required();
  tree_cmd->add_option("--link", link_id, "link id")->required();
  tree_cmd->add_flag("--fast-only", fast_only, "drop slow flows first (builtin scenarios)");
  add_format(tree_cmd);

  std::string delay_budget = "100e-6", memory_budget = "50kb";
  auto* fr_cmd = app.add_subcommand("freerider", "added delay and memory of slow flows on the fast network");
  fr_cmd->add_option("input", input, "topology document or builtin scenario")->required();
  fr_cmd->add_option("--delay-budget", delay_budget, "seconds per port (default 100e-6)");
  fr_cmd->add_option("--memory-budget", memory_budget, "bits per port (default 50kb)");
  add_format(fr_cmd);

  auto* report_cmd = app.add_subcommand("report", "compare a builtin scenario with its published values");
  report_cmd->add_option("scenario", input, "network1 or network2")->required();
  add_modes(report_cmd);
  add_format(report_cmd);

  std::string out_path;
  auto* export_cmd = app.add_subcommand("export", "write a builtin scenario as a topology document");
  export_cmd->add_option("scenario", input, "network1 or network2")->required();
  export_cmd->add_option("-o,--output", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const bool machine = format == "machine";
  try {
    if (*analyze_cmd) return cmd_analyze(input, which, machine);
    if (*sim_cmd) return cmd_simulate(input, horizon, seed, randomize, trace_path, machine);
    if (*tree_cmd) return cmd_tree(input, group, link_id, fast_only, machine);
    if (*fr_cmd) return cmd_freerider(input, delay_budget, memory_budget, machine);
    if (*report_cmd) return cmd_report(input, which, machine);
    if (*export_cmd) return cmd_export(input, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
