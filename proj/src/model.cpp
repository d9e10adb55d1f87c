#include "ivnet/model.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace ivnet {

namespace {

using Successors = std::map<std::string, std::set<std::string>, std::less<>>;

Successors route_successors(const Topology& topology) {
  Successors succ;
  for (const auto& [id, flow] : topology.flows()) {
    for (std::size_t i = 0; i < flow.route.size(); ++i) {
      if (!topology.find_link(flow.route[i])) continue;
      auto& next = succ[flow.route[i]];
      if (i + 1 < flow.route.size() && topology.find_link(flow.route[i + 1])) {
        next.insert(flow.route[i + 1]);
      }
    }
  }
  return succ;
}

// Returns one cycle in the subgraph induced by `alive`, or empty if acyclic.
std::vector<std::string> find_cycle(const Successors& succ, const std::set<std::string>& alive) {
  enum class Mark { none, active, done };
  std::map<std::string, Mark, std::less<>> mark;
  for (const auto& id : alive) mark[id] = Mark::none;

  for (const auto& start : alive) {
    if (mark[start] != Mark::none) continue;
    std::vector<std::pair<std::string, std::vector<std::string>>> stack;
    auto children = [&](const std::string& id) {
      std::vector<std::string> out;
      if (auto it = succ.find(id); it != succ.end()) {
        for (const auto& c : it->second) {
          if (alive.count(c)) out.push_back(c);
        }
      }
      std::reverse(out.begin(), out.end());
      return out;
    };
    stack.emplace_back(start, children(start));
    mark[start] = Mark::active;
    while (!stack.empty()) {
      auto& [node, pending] = stack.back();
      if (pending.empty()) {
        mark[node] = Mark::done;
        stack.pop_back();
        continue;
      }
      std::string next = pending.back();
      pending.pop_back();
      if (mark[next] == Mark::active) {
        std::vector<std::string> cycle;
        auto it = std::find_if(stack.begin(), stack.end(),
                               [&](const auto& frame) { return frame.first == next; });
        for (; it != stack.end(); ++it) cycle.push_back(it->first);
        return cycle;
      }
      if (mark[next] == Mark::none) {
        mark[next] = Mark::active;
        auto grandchildren = children(next);
        stack.emplace_back(next, std::move(grandchildren));
      }
    }
  }
  return {};
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

CycleError::CycleError(std::vector<std::string> cycle)
    : ModelError("cyclic flow-link graph: " + join(cycle, " -> ") +
                 (cycle.empty() ? std::string() : " -> " + cycle.front())),
      cycle_(std::move(cycle)) {}

LineRate::LineRate(BitsPerSecond bps) : bps_(std::move(bps)) {
  if (bps_ <= 0) throw ModelError("line rate must be positive, got " + to_exact_string(bps_));
}

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::device: return "device";
    case NodeKind::bridge: return "bridge";
    case NodeKind::switch_node: return "switch";
    case NodeKind::processor: return "processor";
  }
  return "?";
}

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::core: return "core";
    case Tier::fast: return "fast";
    case Tier::slow: return "slow";
  }
  return "?";
}

NodeKind parse_node_kind(std::string_view text) {
  if (text == "device") return NodeKind::device;
  if (text == "bridge") return NodeKind::bridge;
  if (text == "switch") return NodeKind::switch_node;
  if (text == "processor") return NodeKind::processor;
  throw ModelError("unknown node kind '" + std::string(text) + "'");
}

Tier parse_tier(std::string_view text) {
  if (text == "core") return Tier::core;
  if (text == "fast") return Tier::fast;
  if (text == "slow") return Tier::slow;
  throw ModelError("unknown tier '" + std::string(text) + "'");
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::dangling_endpoint: return "dangling endpoint";
    case ViolationKind::self_loop: return "self loop";
    case ViolationKind::invalid_value: return "invalid value";
    case ViolationKind::unknown_link: return "unknown link";
    case ViolationKind::empty_route: return "empty route";
    case ViolationKind::non_path_route: return "non-path route";
    case ViolationKind::cyclic_flow_graph: return "cyclic flow graph";
    case ViolationKind::rate_overload: return "rate overload";
  }
  return "?";
}

void Topology::add_node(Node node) {
  auto id = node.id;
  if (!nodes_.emplace(id, std::move(node)).second) throw ModelError("duplicate node id '" + id + "'");
}

void Topology::add_link(Link link) {
  auto id = link.id;
  if (!links_.emplace(id, std::move(link)).second) throw ModelError("duplicate link id '" + id + "'");
}

void Topology::add_flow(FlowSpec flow) {
  auto id = flow.id;
  if (!flows_.emplace(id, std::move(flow)).second) throw ModelError("duplicate flow id '" + id + "'");
}

const Node* Topology::find_node(std::string_view id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

const Link* Topology::find_link(std::string_view id) const {
  auto it = links_.find(id);
  return it == links_.end() ? nullptr : &it->second;
}

const FlowSpec* Topology::find_flow(std::string_view id) const {
  auto it = flows_.find(id);
  return it == flows_.end() ? nullptr : &it->second;
}

const Link& Topology::link(std::string_view id) const {
  if (const auto* l = find_link(id)) return *l;
  throw ModelError("unknown link '" + std::string(id) + "'");
}

const FlowSpec& Topology::flow(std::string_view id) const {
  if (const auto* f = find_flow(id)) return *f;
  throw ModelError("unknown flow '" + std::string(id) + "'");
}

Topology Topology::with_flows(const std::function<bool(const FlowSpec&)>& keep) const {
  Topology out;
  out.nodes_ = nodes_;
  out.links_ = links_;
  for (const auto& [id, flow] : flows_) {
    if (keep(flow)) out.flows_.emplace(id, flow);
  }
  return out;
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

const LinkLoad* ValidationReport::load(std::string_view link_id) const {
  auto it = std::find_if(loads.begin(), loads.end(),
                         [&](const LinkLoad& l) { return l.link_id == link_id; });
  return it == loads.end() ? nullptr : &*it;
}

ValidationReport validate_topology(const Topology& topology) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, const std::string& subject, std::string message) {
    report.violations.push_back({kind, subject, std::move(message)});
  };

  for (const auto& [id, link] : topology.links()) {
    if (!topology.find_node(link.from)) add(ViolationKind::dangling_endpoint, id, "unknown source node '" + link.from + "'");
    if (!topology.find_node(link.to)) add(ViolationKind::dangling_endpoint, id, "unknown target node '" + link.to + "'");
    if (link.from == link.to) add(ViolationKind::self_loop, id, "link starts and ends at '" + link.from + "'");
  }

  std::map<std::string, BitsPerSecond, std::less<>> load;
  for (const auto& [id, link] : topology.links()) load[id] = 0;

  for (const auto& [id, flow] : topology.flows()) {
    if (flow.count < 1) add(ViolationKind::invalid_value, id, "count must be at least 1");
    if (flow.packet_bits <= 0) add(ViolationKind::invalid_value, id, "packet_bits must be positive");
    if (flow.per_flow.burst < 0) add(ViolationKind::invalid_value, id, "burst_bits must be non-negative");
    if (flow.per_flow.rate < 0) add(ViolationKind::invalid_value, id, "rate_bps must be non-negative");
    if (flow.route.empty()) {
      add(ViolationKind::empty_route, id, "route is empty");
      continue;
    }
    bool known = true;
    for (const auto& hop : flow.route) {
      if (!topology.find_link(hop)) {
        add(ViolationKind::unknown_link, id, "route uses unknown link '" + hop + "'");
        known = false;
      }
    }
    if (!known) continue;
    for (std::size_t i = 0; i + 1 < flow.route.size(); ++i) {
      const auto& a = topology.link(flow.route[i]);
      const auto& b = topology.link(flow.route[i + 1]);
      if (a.to != b.from) {
        add(ViolationKind::non_path_route, id,
            "link '" + a.id + "' ends at '" + a.to + "' but '" + b.id + "' starts at '" + b.from + "'");
      }
    }
    std::set<std::string> seen;
    for (const auto& hop : flow.route) {
      if (seen.insert(hop).second) load[hop] += flow.aggregate_rate();
    }
  }

  const auto succ = route_successors(topology);
  std::set<std::string> alive;
  for (const auto& [id, next] : succ) alive.insert(id);
  if (auto cycle = find_cycle(succ, alive); !cycle.empty()) {
    add(ViolationKind::cyclic_flow_graph, cycle.front(), CycleError(cycle).what());
  }

  for (const auto& [id, sustained] : load) {
    const auto& rate = topology.link(id).rate.bps();
    Rational util = sustained / rate;
    util.canonicalize();
    report.loads.push_back({id, sustained, util});
    if (sustained >= rate) {
      add(ViolationKind::rate_overload, id,
          "sustained " + to_decimal(sustained, 0) + " b/s >= line rate " + to_decimal(rate, 0) + " b/s");
    }
  }
  return report;
}

void require_valid(const Topology& topology) {
  const auto report = validate_topology(topology);
  if (report.valid()) return;
  std::string message = "invalid topology:";
  std::size_t shown = 0;
  for (const auto& v : report.violations) {
    if (shown++ == 5) {
      message += " ...";
      break;
    }
    message += " [" + std::string(to_string(v.kind)) + "] " + v.subject + ": " + v.message + ";";
  }
  throw ModelError(message);
}

std::vector<FlowSpec> flows_on(const Topology& topology, std::string_view link_id) {
  if (!topology.find_link(link_id)) throw ModelError("unknown link '" + std::string(link_id) + "'");
  std::vector<FlowSpec> out;
  for (const auto& [id, flow] : topology.flows()) {
    if (std::find(flow.route.begin(), flow.route.end(), link_id) != flow.route.end()) out.push_back(flow);
  }
  return out;
}

std::vector<std::string> topological_queue_order(const Topology& topology) {
  const auto succ = route_successors(topology);
  std::map<std::string, int, std::less<>> indegree;
  for (const auto& [id, next] : succ) indegree.try_emplace(id, 0);
  for (const auto& [id, next] : succ) {
    for (const auto& n : next) ++indegree[n];
  }

  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const auto& [id, deg] : indegree) {
    if (deg == 0) ready.push(id);
  }
  std::vector<std::string> order;
  while (!ready.empty()) {
    auto id = ready.top();
    ready.pop();
    order.push_back(id);
    if (auto it = succ.find(id); it != succ.end()) {
      for (const auto& n : it->second) {
        if (--indegree[n] == 0) ready.push(n);
      }
    }
  }
  if (order.size() != indegree.size()) {
    std::set<std::string> alive;
    for (const auto& [id, deg] : indegree) {
      if (deg > 0) alive.insert(id);
    }
    throw CycleError(find_cycle(succ, alive));
  }
  for (const auto& [id, link] : topology.links()) {
    if (!succ.count(id)) order.push_back(id);
  }
  return order;
}

}  // namespace ivnet
