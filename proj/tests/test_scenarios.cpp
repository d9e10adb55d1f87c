#include <doctest.h>

#include <set>

#include "ivnet/scenarios.hpp"

using namespace ivnet;

TEST_CASE("built-in scenarios are valid feed-forward networks") {
  for (const auto& name : scenario_names()) {
    CAPTURE(name);
    const ScenarioBundle b = scenario_by_name(name);
    CHECK(b.name == name);
    const auto v = validate_topology(b.topology);
    CHECK(v.valid());
    CHECK_NOTHROW(b.groups.check_covers(b.topology));
    CHECK(b.sources.size() > 0);
    CHECK_FALSE(b.golden.empty());
    REQUIRE_FALSE(b.reference_route.empty());
    CHECK(link_class(b.reference_route.front()) == "(1)");
    CHECK(link_class(b.reference_route.back()) == "(10)");
    for (const auto& fx : b.fixtures) {
      CAPTURE(fx.name);
      CHECK(validate_topology(fx.topology).valid());
      CHECK_NOTHROW(fx.groups.check_covers(fx.topology));
    }
  }
  CHECK_THROWS_AS(scenario_by_name("network3"), ModelError);
  CHECK_THROWS_AS(network1().fixture("port99"), ModelError);
}

TEST_CASE("four zones of 160 slow devices and 4 fast devices") {
  const ScenarioBundle b = network1();
  std::size_t slow_devices = 0, fast_devices = 0;
  for (const auto& [id, n] : b.topology.nodes()) {
    if (id.rfind("sd.", 0) == 0) ++slow_devices;
    if (id.rfind("fd.", 0) == 0) ++fast_devices;
  }
  CHECK(slow_devices == 4 * 4 * 10);
  CHECK(fast_devices == 4 * 4);
}

TEST_CASE("the two networks differ only in downstream rates and processor traffic") {
  const ScenarioBundle a = network1(), b = network2();
  CHECK(a.topology.nodes() == b.topology.nodes());
  REQUIRE(a.topology.links().size() == b.topology.links().size());
  std::set<std::string> changed;
  for (const auto& [id, l] : a.topology.links())
    if (!(l.rate == b.topology.link(id).rate)) changed.insert(link_class(id));
  CHECK(changed == std::set<std::string>{"(2)", "(8)", "(9)", "(11)"});
  const FlowSpec& p1 = a.topology.flow("proc.z0.k0");
  const FlowSpec& p2 = b.topology.flow("proc.z0.k0");
  CHECK(p1.packet_bits == 12000);
  CHECK(p2.packet_bits == 512);
  CHECK(p2.count == 4);
}

TEST_CASE("fast network drops the slow flows only") {
  const ScenarioBundle b = network1();
  const Topology fast = fast_network(b);
  CHECK(fast.links() == b.topology.links());
  for (const auto& [id, f] : fast.flows()) CHECK(id.rfind("slow.", 0) != 0);
  CHECK(fast.find_flow("proc.z0.k0") != nullptr);
  CHECK(fast.find_flow("fast.z0.k0") != nullptr);
}

TEST_CASE("link classes") {
  CHECK(link_class("l9.z1.f0") == "(9)");
  CHECK(link_class("l10.z0.f0.d3") == "(10)");
  CHECK(link_class("l1.z0.f0.d3") == "(1)");
  CHECK(link_class("uplink") == "");
  CHECK(link_class("l12.z0") == "");
}

TEST_CASE("golden rows are well formed") {
  for (const auto& name : scenario_names()) {
    const ScenarioBundle b = scenario_by_name(name);
    std::set<std::string> keys;
    for (const auto& row : b.golden) {
      CAPTURE(row.key);
      CHECK(keys.insert(row.key).second);
      CHECK_FALSE(row.terms.empty());
      CHECK_FALSE(row.citation.empty());
      CHECK(row.printed > 0);
      if (row.kind == GoldenKind::rendered) CHECK(row.resolution > 0);
      if (row.kind == GoldenKind::relative) CHECK(row.tolerance > 0);
      for (const auto& term : row.terms)
        if (!term.fixture.empty()) CHECK_NOTHROW(b.fixture(term.fixture));
    }
  }
}

TEST_CASE("golden evaluation reuses a report but rejects a foreign one") {
  const ScenarioBundle b = network1();
  const auto report = analyze(b.topology, b.groups, Mode::exact);
  const auto fresh = evaluate_golden(b, Mode::exact);
  const auto reused = evaluate_golden(b, report);
  REQUIRE(fresh.size() == reused.size());
  for (std::size_t i = 0; i < fresh.size(); ++i) CHECK(fresh[i].computed == reused[i].computed);
  const std::string text = render_golden(fresh);
  CHECK(text.find("n1.exact.port9") != std::string::npos);

  const ScenarioBundle other = network2();
  AnalysisReport foreign = report;
  foreign.port_bounds.push_back({"not-a-link", 0, 0});
  CHECK_THROWS_AS(evaluate_golden(b, foreign), ModelError);
  CHECK_THROWS_AS(render_report(foreign, other), ModelError);
}
