// Topology and flow data model: nodes, simplex links, routed flow specs.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ivnet/rational.hpp"

namespace ivnet {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the flow-link graph contains a cycle; `cycle()` names one.
class CycleError : public ModelError {
 public:
  explicit CycleError(std::vector<std::string> cycle);
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

/// Line rate of a link, strictly positive.
class LineRate {
 public:
  explicit LineRate(BitsPerSecond bps);
  const BitsPerSecond& bps() const { return bps_; }
  friend bool operator==(const LineRate&, const LineRate&) = default;

 private:
  BitsPerSecond bps_;
};

/// Traffic envelope: at most burst + rate * t bits in any window of length t.
struct FlowType {
  Bits burst;
  BitsPerSecond rate;
  friend bool operator==(const FlowType&, const FlowType&) = default;
};

enum class NodeKind { device, bridge, switch_node, processor };
enum class Tier { core, fast, slow };

std::string_view to_string(NodeKind kind);
std::string_view to_string(Tier tier);
NodeKind parse_node_kind(std::string_view text);
Tier parse_tier(std::string_view text);

struct Node {
  std::string id;
  NodeKind kind = NodeKind::device;
  Tier tier = Tier::core;
  friend bool operator==(const Node&, const Node&) = default;
};

/// One direction of a cable. A duplex cable is two links whose rates may differ.
struct Link {
  std::string id;
  std::string from;
  std::string to;
  LineRate rate;
  friend bool operator==(const Link&, const Link&) = default;
};

/// `count` identical member flows sharing one route and one per-flow envelope.
struct FlowSpec {
  std::string id;
  std::int64_t count = 1;
  Bits packet_bits;
  FlowType per_flow;
  std::vector<std::string> route;

  BitsPerSecond aggregate_rate() const { return per_flow.rate * count; }
  /// Burst of the whole spec as it leaves its bridge.
  Bits source_burst() const { return per_flow.burst * count; }
  friend bool operator==(const FlowSpec&, const FlowSpec&) = default;
};

class Topology {
 public:
  /// Each adder rejects a duplicate id with ModelError.
  void add_node(Node node);
  void add_link(Link link);
  void add_flow(FlowSpec flow);

  const std::map<std::string, Node, std::less<>>& nodes() const { return nodes_; }
  const std::map<std::string, Link, std::less<>>& links() const { return links_; }
  const std::map<std::string, FlowSpec, std::less<>>& flows() const { return flows_; }

  const Node* find_node(std::string_view id) const;
  const Link* find_link(std::string_view id) const;
  const FlowSpec* find_flow(std::string_view id) const;

  /// Throws ModelError for unknown ids.
  const Link& link(std::string_view id) const;
  const FlowSpec& flow(std::string_view id) const;

  bool empty() const { return nodes_.empty() && links_.empty() && flows_.empty(); }

  /// Copy keeping only the flows accepted by `keep`; nodes and links are unchanged.
  Topology with_flows(const std::function<bool(const FlowSpec&)>& keep) const;

  friend bool operator==(const Topology&, const Topology&) = default;

 private:
  std::map<std::string, Node, std::less<>> nodes_;
  std::map<std::string, Link, std::less<>> links_;
  std::map<std::string, FlowSpec, std::less<>> flows_;
};

enum class ViolationKind {
  dangling_endpoint,
  self_loop,
  invalid_value,
  unknown_link,
  empty_route,
  non_path_route,
  cyclic_flow_graph,
  rate_overload,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;
  std::string message;
};

struct LinkLoad {
  std::string link_id;
  BitsPerSecond sustained;  // sum of routed sustained rates
  Rational utilization;     // sustained / line rate
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<LinkLoad> loads;  // sorted by link id

  bool valid() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  const LinkLoad* load(std::string_view link_id) const;
};

/// Lists every structural and stability violation; never throws.
ValidationReport validate_topology(const Topology& topology);

/// Throws ModelError if the topology is not valid, quoting the first violations.
void require_valid(const Topology& topology);

/// Flow specs whose route contains `link_id`, sorted by flow id.
std::vector<FlowSpec> flows_on(const Topology& topology, std::string_view link_id);

/// Links ordered so every route visits them in order; ties broken by link id.
/// Links not used by any flow are appended in id order.
/// Throws CycleError when routes induce a cycle among queues.
std::vector<std::string> topological_queue_order(const Topology& topology);

}  // namespace ivnet
