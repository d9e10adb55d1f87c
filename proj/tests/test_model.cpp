#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "ivnet/model.hpp"

using namespace ivnet;
using ivnet::testing::gbps;
using ivnet::testing::make_flow;
using ivnet::testing::mbps;

namespace {

Topology pair_of_switches() {
  Topology t;
  t.add_node({"a", NodeKind::switch_node, Tier::fast});
  t.add_node({"b", NodeKind::switch_node, Tier::fast});
  t.add_node({"dev", NodeKind::bridge, Tier::slow});
  t.add_link({"dev>a", "dev", "a", LineRate(mbps(100))});
  t.add_link({"a>b", "a", "b", LineRate(gbps(1))});
  t.add_link({"b>a", "b", "a", LineRate(gbps(1))});
  return t;
}

}  // namespace

TEST_CASE("line rate must be positive") {
  CHECK_THROWS_AS(LineRate(Rational(0)), ModelError);
  CHECK_THROWS_AS(LineRate(Rational(-5)), ModelError);
  CHECK(LineRate(mbps(10)).bps() == 10'000'000);
}

TEST_CASE("duplicate ids are rejected") {
  Topology t = pair_of_switches();
  CHECK_THROWS_AS(t.add_node({"a", NodeKind::switch_node, Tier::fast}), ModelError);
  CHECK_THROWS_AS(t.add_link({"a>b", "a", "b", LineRate(gbps(1))}), ModelError);
  t.add_flow(make_flow("f", 1, 512, mbps(1), {"dev>a", "a>b"}));
  CHECK_THROWS_AS(t.add_flow(make_flow("f", 1, 512, mbps(1), {"dev>a"})), ModelError);
}

TEST_CASE("valid topology reports loads") {
  Topology t = pair_of_switches();
  t.add_flow(make_flow("f", 4, 512, mbps(2), {"dev>a", "a>b"}));
  const auto report = validate_topology(t);
  REQUIRE(report.valid());
  REQUIRE(report.load("dev>a") != nullptr);
  CHECK(report.load("dev>a")->sustained == mbps(8));
  CHECK(report.load("dev>a")->utilization == make_rational(8, 100));
  CHECK(report.load("a>b")->utilization == make_rational(8, 1000));
}

TEST_CASE("structural violations are listed, not thrown") {
  Topology t = pair_of_switches();
  t.add_link({"loop", "a", "a", LineRate(gbps(1))});
  t.add_link({"dangling", "a", "nowhere", LineRate(gbps(1))});
  t.add_flow(make_flow("unknown", 1, 512, mbps(1), {"dev>a", "missing"}));
  t.add_flow(make_flow("broken", 1, 512, mbps(1), {"dev>a", "b>a"}));
  t.add_flow(make_flow("empty", 1, 512, mbps(1), {}));
  t.add_flow(make_flow("hog", 1, 512, gbps(2), {"a>b"}));
  t.add_flow(make_flow("zero", 1, 0, mbps(1), {"a>b"}));
  const auto report = validate_topology(t);
  CHECK_FALSE(report.valid());
  CHECK(report.has(ViolationKind::self_loop));
  CHECK(report.has(ViolationKind::dangling_endpoint));
  CHECK(report.has(ViolationKind::unknown_link));
  CHECK(report.has(ViolationKind::non_path_route));
  CHECK(report.has(ViolationKind::empty_route));
  CHECK(report.has(ViolationKind::rate_overload));
  CHECK(report.has(ViolationKind::invalid_value));
  CHECK_THROWS_AS(require_valid(t), ModelError);
}

TEST_CASE("a rate exactly equal to the line rate is an overload") {
  Topology t = pair_of_switches();
  t.add_flow(make_flow("f", 1, 512, gbps(1), {"a>b"}));
  CHECK(validate_topology(t).has(ViolationKind::rate_overload));
}

TEST_CASE("routes that chase each other around a ring form a cycle") {
  Topology t = pair_of_switches();
  t.add_flow(make_flow("ab", 1, 512, mbps(1), {"dev>a", "a>b", "b>a"}));
  CHECK_NOTHROW(topological_queue_order(t));
  t.add_flow(make_flow("ba", 1, 512, mbps(1), {"b>a", "a>b"}));
  try {
    topological_queue_order(t);
    FAIL("expected CycleError");
  } catch (const CycleError& e) {
    CHECK(e.cycle().size() >= 2);
  }
  CHECK(validate_topology(t).has(ViolationKind::cyclic_flow_graph));
}

TEST_CASE("topological order respects every route") {
  Topology t = pair_of_switches();
  t.add_flow(make_flow("f", 1, 512, mbps(1), {"dev>a", "a>b", "b>a"}));
  const auto order = topological_queue_order(t);
  auto pos = [&](const std::string& id) { return std::find(order.begin(), order.end(), id) - order.begin(); };
  CHECK(order.size() == t.links().size());
  CHECK(pos("dev>a") < pos("a>b"));
  CHECK(pos("a>b") < pos("b>a"));
  CHECK(order == topological_queue_order(t));
}

TEST_CASE("flows_on and with_flows") {
  Topology t = pair_of_switches();
  t.add_flow(make_flow("z", 1, 512, mbps(1), {"dev>a", "a>b"}));
  t.add_flow(make_flow("y", 1, 512, mbps(1), {"a>b"}));
  const auto on = flows_on(t, "a>b");
  REQUIRE(on.size() == 2);
  CHECK(on[0].id == "y");
  CHECK(flows_on(t, "b>a").empty());
  const Topology kept = t.with_flows([](const FlowSpec& f) { return f.id == "z"; });
  CHECK(kept.flows().size() == 1);
  CHECK(kept.links() == t.links());
}

TEST_CASE("node kinds and tiers round-trip through text") {
  for (auto k : {NodeKind::device, NodeKind::bridge, NodeKind::switch_node, NodeKind::processor})
    CHECK(parse_node_kind(to_string(k)) == k);
  for (auto tier : {Tier::core, Tier::fast, Tier::slow}) CHECK(parse_tier(to_string(tier)) == tier);
  CHECK_THROWS(parse_node_kind("router"));
}
