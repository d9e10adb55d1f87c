#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "ivnet/document.hpp"
#include "ivnet/freerider.hpp"
#include "ivnet/propagate.hpp"
#include "ivnet/scenarios.hpp"
#include "ivnet/sim.hpp"
#include "ivnet/tree.hpp"

namespace py = pybind11;
using namespace ivnet;

namespace {

// A topology together with the grouping used for analysis.
struct Network {
  Topology topology;
  Partition groups;
  std::vector<ShapedSource> sources;  // builtin scenarios only
};

py::object frac(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_exact_string(r));
}

// int, str ("2.4G", "3/2") or Fraction.
Rational rat(const py::handle& v) {
  if (py::isinstance<py::str>(v)) return parse_quantity(v.cast<std::string>());
  return parse_rational(py::str(v).cast<std::string>());
}

Network from_document(const std::string& text) {
  TopologyDocument doc = parse_document(text);
  Partition p = doc.groups ? *doc.groups : Partition::singletons(doc.topology);
  return {std::move(doc.topology), std::move(p), {}};
}

Network builtin(const std::string& name, bool fast_only) {
  ScenarioBundle b = scenario_by_name(name);
  if (!fast_only) return {std::move(b.topology), std::move(b.groups), std::move(b.sources)};
  Topology fast = fast_network(b);
  Partition p = Partition::singletons(fast);
  return {std::move(fast), std::move(p), {}};
}

py::dict report_dict(const AnalysisReport& r) {
  py::dict ports, memory, paths;
  for (const auto& p : r.port_bounds) {
    py::dict d;
    d["delay"] = frac(p.delay_bound);
    d["storage"] = frac(p.storage_bound);
    ports[py::str(p.link_id)] = d;
  }
  for (const auto& [sw, bits] : r.switch_memory) memory[py::str(sw)] = frac(bits);
  for (const auto& p : r.path_latencies) {
    py::dict d;
    d["group"] = p.group;
    d["route"] = p.route;
    d["latency"] = frac(p.latency);
    paths[py::str(p.flow_id)] = d;
  }
  py::dict out;
  out["mode"] = std::string(to_string(r.mode));
  out["ports"] = ports;
  out["switch_memory"] = memory;
  out["paths"] = paths;
  out["notes"] = r.notes;
  return out;
}

py::list violations(const Network& n) {
  py::list out;
  for (const auto& v : validate_topology(n.topology).violations) {
    py::dict d;
    d["kind"] = std::string(to_string(v.kind));
    d["subject"] = v.subject;
    d["message"] = v.message;
    out.append(d);
  }
  return out;
}

py::dict analyze_py(const Network& n, const std::string& mode, const py::object& threshold) {
  const Rational th = threshold.is_none() ? kDefaultSmallThreshold : rat(threshold);
  return report_dict(analyze(n.topology, n.groups, parse_mode(mode), th));
}

py::dict bursts_py(const Network& n, const std::string& mode) {
  const BurstMap bm = propagate_bursts(n.topology, n.groups, parse_mode(mode));
  py::dict out;
  for (const auto& [key, beta] : bm.entries()) out[py::make_tuple(key.group, key.link)] = frac(beta);
  return out;
}

py::dict simulate_py(const Network& n, const py::object& horizon, std::optional<std::uint64_t> seed) {
  auto sources = n.sources.empty() ? default_sources(n.topology) : n.sources;
  if (seed) randomize_offsets(sources, *seed);
  SimOptions o;
  if (!horizon.is_none()) o.horizon = rat(horizon);
  SimResult r;
  {
    py::gil_scoped_release release;
    r = run(n.topology, sources, o);
  }
  const ComplianceReport c = compare_with_bounds(r, analyze(n.topology, n.groups, Mode::exact));
  py::dict ports, flows;
  for (const auto& p : r.ports) {
    py::dict d;
    d["max_delay"] = frac(p.max_delay);
    d["max_backlog"] = frac(p.max_backlog);
    d["packets"] = p.packets;
    ports[py::str(p.link_id)] = d;
  }
  for (const auto& f : r.flows) {
    py::dict d;
    d["max_delay"] = frac(f.max_delay);
    d["delivered"] = f.delivered;
    d["dropped"] = f.dropped;
    flows[py::str(f.flow_id)] = d;
  }
  py::dict out;
  out["ports"] = ports;
  out["flows"] = flows;
  out["steady"] = r.steady;
  out["events"] = r.events;
  out["within_bounds"] = c.pass();
  out["min_slack"] = frac(c.min_slack());
  return out;
}

py::dict tree_py(const Network& n, const std::vector<std::string>& group, const std::string& link,
                 const py::object& max_packet) {
  const InfluenceTree t = build_influence_tree(n.topology, group, link);
  const Bits a = max_packet.is_none() ? max_leaf_burst(t) : rat(max_packet);
  py::list leaves;
  for (const TreeNode* leaf : t.leaves()) leaves.append(py::make_tuple(leaf->link_id, leaf->flow_count));
  py::dict out;
  out["bound"] = frac(leaf_count_bound(t, a));
  out["refined_bound"] = frac(refined_leaf_bound(t));
  out["leaves"] = leaves;
  out["depth"] = t.depth();
  out["text"] = render_tree_text(t);
  return out;
}

// overlay: {link_id: (max_flows, per_flow_rate, spare)}
py::dict free_rider_py(const Network& n, const py::object& max_packet, const py::dict& overlay,
                       const py::object& delay_budget, const py::object& memory_budget) {
  SlowOverlay o{rat(max_packet), {}};
  for (const auto& [k, v] : overlay) {
    const auto t = v.cast<py::tuple>();
    o.links[k.cast<std::string>()] = SlowLinkLoad{t[0].cast<std::int64_t>(), rat(t[1]), rat(t[2])};
  }
  const FreeRiderReport r = check_free_rider(n.topology, o, {rat(delay_budget), rat(memory_budget)});
  py::dict links;
  for (const auto& l : r.links) {
    py::dict d;
    d["added_delay"] = frac(l.added_delay);
    d["added_memory"] = frac(l.added_memory);
    d["delay_ok"] = l.delay_ok;
    d["memory_ok"] = l.memory_ok;
    d["bandwidth_ok"] = l.bandwidth_ok;
    d["smallness_ok"] = l.smallness_ok;
    d["pass"] = l.pass();
    links[py::str(l.link_id)] = d;
  }
  py::dict out;
  out["links"] = links;
  out["pass"] = r.pass();
  return out;
}

py::list golden_py(const std::string& name) {
  const ScenarioBundle b = scenario_by_name(name);
  py::list out;
  for (const auto& r : evaluate_golden(b)) {
    py::dict d;
    d["key"] = r.row->key;
    d["criterion"] = r.row->criterion;
    d["label"] = r.row->label;
    d["computed"] = frac(r.computed);
    d["printed"] = r.row->printed_text;
    d["kind"] = std::string(to_string(r.row->kind));
    d["pass"] = r.pass;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_ivnet, m) {
  m.doc() = "Burst propagation, delay/memory bounds and FIFO simulation for in-vehicle Ethernet";

  py::register_exception<ModelError>(m, "ModelError", PyExc_ValueError);
  py::register_exception<StabilityError>(m, "StabilityError", PyExc_ValueError);
  py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);

  py::class_<Network>(m, "Network")
      .def_static("from_yaml", &from_document, py::arg("text"))
      .def_static("builtin", &builtin, py::arg("name"), py::arg("fast_only") = false)
      .def("to_yaml", [](const Network& n) { return export_document(n.topology, &n.groups); })
      .def_property_readonly("link_ids",
                             [](const Network& n) {
                               std::vector<std::string> ids;
                               for (const auto& [id, l] : n.topology.links()) ids.push_back(id);
                               return ids;
                             })
      .def_property_readonly("flow_ids",
                             [](const Network& n) {
                               std::vector<std::string> ids;
                               for (const auto& [id, f] : n.topology.flows()) ids.push_back(id);
                               return ids;
                             })
      .def_property_readonly("groups", [](const Network& n) { return n.groups.groups(); })
      .def("violations", &violations)
      .def("analyze", &analyze_py, py::arg("mode") = "exact", py::arg("threshold") = py::none())
      .def("bursts", &bursts_py, py::arg("mode") = "exact")
      .def("simulate", &simulate_py, py::arg("horizon") = py::none(), py::arg("seed") = py::none())
      .def("influence_tree", &tree_py, py::arg("group"), py::arg("link"), py::arg("max_packet") = py::none())
      .def("free_rider", &free_rider_py, py::arg("max_packet"), py::arg("overlay"), py::arg("delay_budget"),
           py::arg("memory_budget"));

  m.def("scenario_names", &scenario_names);
  m.def("golden", &golden_py, py::arg("name"));
  m.def("parse_quantity", [](const std::string& s) { return frac(parse_quantity(s)); });
}
