#include "ivnet/document.hpp"

#include <yaml-cpp/yaml.h>

#include <json.hpp>

namespace ivnet {

using nlohmann::json;

ParseError::ParseError(std::string message, int line, int column, std::string token)
    : ModelError(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                 (token.empty() ? std::string() : " ('" + token + "')")),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool ends_with(std::string_view s, std::string_view tail) {
  return s.size() >= tail.size() && s.substr(s.size() - tail.size()) == tail;
}

}  // namespace

Rational parse_quantity(std::string_view text) {
  std::string_view s = trim(text);
  for (std::string_view unit : {"b/s", "bps", "b"}) {
    if (ends_with(s, unit)) {
      s = trim(s.substr(0, s.size() - unit.size()));
      break;
    }
  }
  Rational scale = 1;
  if (!s.empty()) {
    switch (s.back()) {
      case 'k':
      case 'K': scale = 1000; break;
      case 'M': scale = 1'000'000; break;
      case 'G': scale = 1'000'000'000; break;
      default: break;
    }
    if (scale != 1) s = trim(s.substr(0, s.size() - 1));
  }
  if (s.empty()) throw std::invalid_argument("missing number in '" + std::string(text) + "'");
  return parse_rational(s) * scale;
}

namespace {

[[noreturn]] void fail(const YAML::Node& at, const std::string& message, const std::string& token = "") {
  const auto m = at.Mark();
  throw ParseError(message, m.line + 1, m.column + 1, token);
}

std::string text_of(const YAML::Node& n, const std::string& what) {
  if (!n || !n.IsScalar()) fail(n, "expected a scalar for " + what);
  return n.Scalar();
}

const YAML::Node field(const YAML::Node& map, const char* key, const std::string& owner) {
  const YAML::Node v = map[key];
  if (!v) fail(map, owner + " is missing '" + key + "'");
  return v;
}

Rational quantity(const YAML::Node& n, const std::string& what) {
  const std::string s = text_of(n, what);
  try {
    return parse_quantity(s);
  } catch (const std::invalid_argument&) {
    fail(n, "invalid number for " + what, s);
  }
}

std::int64_t integer(const YAML::Node& n, const std::string& what) {
  const Rational v = quantity(n, what);
  if (v.get_den() != 1 || !v.get_num().fits_slong_p()) fail(n, "expected an integer for " + what, n.Scalar());
  return v.get_num().get_si();
}

const YAML::Node sequence(const YAML::Node& root, const char* key) {
  const YAML::Node v = root[key];
  if (!v) fail(root, std::string("missing top-level key '") + key + "'");
  if (v.IsNull()) return YAML::Node(YAML::NodeType::Sequence);
  if (!v.IsSequence()) fail(v, std::string("'") + key + "' must be a list");
  return v;
}

std::string exact(const Rational& v) { return v.get_str(); }

}  // namespace

TopologyDocument parse_document(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1, "");
  }
  if (!root.IsMap()) fail(root, "document must be a map with nodes, links and flows");

  TopologyDocument doc;
  Topology& t = doc.topology;
  for (const auto& n : sequence(root, "nodes")) {
    if (!n.IsMap()) fail(n, "node entries must be maps");
    const std::string id = text_of(field(n, "id", "node"), "node id");
    Node node{id, NodeKind::device, Tier::core};
    try {
      if (n["kind"]) node.kind = parse_node_kind(text_of(n["kind"], "kind"));
      if (n["tier"]) node.tier = parse_tier(text_of(n["tier"], "tier"));
      t.add_node(node);
    } catch (const ParseError&) {
      throw;
    } catch (const ModelError& e) {
      fail(n, e.what(), id);
    }
  }
  for (const auto& l : sequence(root, "links")) {
    if (!l.IsMap()) fail(l, "link entries must be maps");
    const std::string id = text_of(field(l, "id", "link"), "link id");
    const auto rate_node = field(l, "rate_bps", "link " + id);
    const Rational rate = quantity(rate_node, "rate_bps");
    try {
      t.add_link({id, text_of(field(l, "from", "link " + id), "from"), text_of(field(l, "to", "link " + id), "to"),
                  LineRate(rate)});
    } catch (const ParseError&) {
      throw;
    } catch (const ModelError& e) {
      fail(l, e.what(), id);
    }
  }
  for (const auto& f : sequence(root, "flows")) {
    if (!f.IsMap()) fail(f, "flow entries must be maps");
    const std::string id = text_of(field(f, "id", "flow"), "flow id");
    const std::string owner = "flow " + id;
    FlowSpec spec;
    spec.id = id;
    spec.count = f["count"] ? integer(f["count"], "count") : 1;
    spec.packet_bits = quantity(field(f, "packet_bits", owner), "packet_bits");
    spec.per_flow.burst = f["burst_bits"] ? quantity(f["burst_bits"], "burst_bits") : spec.packet_bits;
    spec.per_flow.rate = quantity(field(f, "rate_bps", owner), "rate_bps");
    const auto route = field(f, "route", owner);
    if (!route.IsSequence()) fail(route, "route must be a list of link ids");
    for (const auto& hop : route) spec.route.push_back(text_of(hop, "route entry"));
    try {
      t.add_flow(std::move(spec));
    } catch (const ModelError& e) {
      fail(f, e.what(), id);
    }
  }
  if (const auto groups = root["groups"]) {
    if (!groups.IsMap()) fail(groups, "'groups' must map group names to flow id lists");
    Partition p;
    for (const auto& entry : groups) {
      const std::string name = text_of(entry.first, "group name");
      if (!entry.second.IsSequence()) fail(entry.second, "group " + name + " must list flow ids");
      for (const auto& member : entry.second) {
        try {
          p.assign(name, text_of(member, "flow id"));
        } catch (const ParseError&) {
          throw;
        } catch (const ModelError& e) {
          fail(member, e.what(), member.Scalar());
        }
      }
    }
    doc.groups = std::move(p);
  }
  return doc;
}

Topology parse_topology_document(std::string_view text) { return parse_document(text).topology; }

std::string export_document(const Topology& topology, const Partition* groups) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "nodes" << YAML::Value << YAML::BeginSeq;
  for (const auto& [id, n] : topology.nodes()) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "id" << YAML::Value << id << YAML::Key << "kind"
        << YAML::Value << std::string(to_string(n.kind)) << YAML::Key << "tier" << YAML::Value
        << std::string(to_string(n.tier)) << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "links" << YAML::Value << YAML::BeginSeq;
  for (const auto& [id, l] : topology.links()) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "id" << YAML::Value << id << YAML::Key << "from"
        << YAML::Value << l.from << YAML::Key << "to" << YAML::Value << l.to << YAML::Key << "rate_bps"
        << YAML::Value << exact(l.rate.bps()) << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "flows" << YAML::Value << YAML::BeginSeq;
  for (const auto& [id, f] : topology.flows()) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "id" << YAML::Value << id << YAML::Key << "count"
        << YAML::Value << f.count << YAML::Key << "packet_bits" << YAML::Value << exact(f.packet_bits) << YAML::Key
        << "burst_bits" << YAML::Value << exact(f.per_flow.burst) << YAML::Key << "rate_bps" << YAML::Value
        << exact(f.per_flow.rate) << YAML::Key << "route" << YAML::Value << YAML::Flow << f.route << YAML::EndMap;
  }
  out << YAML::EndSeq;
  if (groups) {
    out << YAML::Key << "groups" << YAML::Value << YAML::BeginMap;
    for (const auto& [name, members] : groups->groups())
      out << YAML::Key << name << YAML::Value << YAML::Flow << members;
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

// ---- JSON ------------------------------------------------------------------

namespace {

json num(const Rational& v) { return json{{"exact", v.get_str()}, {"approx", v.get_d()}}; }

Rational read_num(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_object() || !j.at(key).contains("exact"))
    throw ModelError(std::string("machine report is missing number '") + key + "'");
  try {
    return parse_rational(j.at(key).at("exact").get<std::string>());
  } catch (const std::exception& e) {
    throw ModelError(std::string("bad number '") + key + "': " + e.what());
  }
}

json tree_node(const TreeNode& n) {
  json children = json::array();
  for (const auto& c : n.children) children.push_back(tree_node(c));
  return json{{"link_id", n.link_id}, {"flows", n.flows},      {"flow_count", n.flow_count},
              {"max_burst", num(n.max_burst)}, {"leaf", n.is_leaf()}, {"children", children}};
}

}  // namespace

std::string report_to_json(const AnalysisReport& report) {
  json ports = json::array();
  for (const auto& p : report.port_bounds)
    ports.push_back({{"link_id", p.link_id}, {"delay_bound", num(p.delay_bound)}, {"storage_bound", num(p.storage_bound)}});
  json memory = json::object();
  for (const auto& [id, bits] : report.switch_memory) memory[id] = num(bits);
  json paths = json::array();
  for (const auto& p : report.path_latencies)
    paths.push_back({{"group", p.group}, {"flow_id", p.flow_id}, {"route", p.route}, {"latency", num(p.latency)}});
  json j{{"mode", std::string(to_string(report.mode))},
         {"port_bounds", ports},
         {"switch_memory", memory},
         {"path_latencies", paths},
         {"notes", report.notes}};
  return j.dump(2) + "\n";
}

AnalysisReport report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("machine report is not valid JSON: ") + e.what());
  }
  try {
    AnalysisReport r;
    r.mode = parse_mode(j.at("mode").get<std::string>());
    for (const auto& p : j.at("port_bounds"))
      r.port_bounds.push_back({p.at("link_id").get<std::string>(), read_num(p, "delay_bound"), read_num(p, "storage_bound")});
    for (const auto& [id, v] : j.at("switch_memory").items()) {
      json wrapper{{"v", v}};
      r.switch_memory[id] = read_num(wrapper, "v");
    }
    for (const auto& p : j.at("path_latencies"))
      r.path_latencies.push_back({p.at("group").get<std::string>(), p.at("flow_id").get<std::string>(),
                                  p.at("route").get<std::vector<std::string>>(), read_num(p, "latency")});
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed machine report: ") + e.what());
  }
}

std::string sim_to_json(const SimResult& result, const ComplianceReport& compliance) {
  json ports = json::array();
  for (const auto& p : result.ports)
    ports.push_back({{"link_id", p.link_id}, {"max_delay", num(p.max_delay)}, {"max_backlog", num(p.max_backlog)},
                     {"packets", p.packets}});
  json flows = json::array();
  for (const auto& f : result.flows)
    flows.push_back({{"flow_id", f.flow_id}, {"max_delay", num(f.max_delay)}, {"delivered", f.delivered},
                     {"dropped", f.dropped}});
  json entries = json::array();
  for (const auto& e : compliance.entries)
    entries.push_back({{"subject", e.subject}, {"kind", e.kind}, {"measured", num(e.measured)}, {"bound", num(e.bound)},
                       {"slack", num(e.slack())}, {"ok", e.ok()}});
  json j{{"horizon", num(result.horizon)}, {"events", result.events}, {"steady", result.steady},
         {"ports", ports},                {"flows", flows},            {"drop_log", result.drop_log},
         {"compliance", {{"pass", compliance.pass()}, {"entries", entries}}}};
  return j.dump(2) + "\n";
}

std::string tree_to_json(const InfluenceTree& tree, const Bits& leaf_bound, const Bits& refined_bound) {
  json j{{"group", tree.group},
         {"depth", tree.depth()},
         {"leaf_count_bound", num(leaf_bound)},
         {"refined_bound", num(refined_bound)},
         {"root", tree_node(tree.root)}};
  return j.dump(2) + "\n";
}

std::string free_rider_to_json(const FreeRiderReport& report) {
  json links = json::array();
  for (const auto& l : report.links)
    links.push_back({{"link_id", l.link_id}, {"line_rate", num(l.line_rate)}, {"max_flows", l.max_flows},
                     {"added_delay", num(l.added_delay)}, {"added_memory", num(l.added_memory)},
                     {"delay_ok", l.delay_ok}, {"memory_ok", l.memory_ok}, {"bandwidth_ok", l.bandwidth_ok},
                     {"smallness_ok", l.smallness_ok}, {"pass", l.pass()}});
  return json{{"pass", report.pass()}, {"links", links}}.dump(2) + "\n";
}

std::string golden_to_json(const std::vector<GoldenResult>& results) {
  json rows = json::array();
  for (const auto& r : results) {
    const GoldenRow& g = *r.row;
    rows.push_back({{"key", g.key}, {"criterion", g.criterion}, {"mode", std::string(to_string(g.mode))},
                    {"label", g.label}, {"quantity", std::string(to_string(g.quantity))},
                    {"computed", num(r.computed)}, {"printed", num(g.printed)}, {"printed_text", g.printed_text},
                    {"kind", std::string(to_string(g.kind))}, {"deviation", num(r.deviation)}, {"pass", r.pass},
                    {"citation", g.citation}});
  }
  return json{{"pass", all_pass(results)}, {"rows", rows}}.dump(2) + "\n";
}

}  // namespace ivnet
