#include <doctest.h>

#include <map>
#include <sstream>

#include "helpers.hpp"
#include "ivnet/sim.hpp"

using namespace ivnet;
using ivnet::testing::gbps;
using ivnet::testing::make_flow;
using ivnet::testing::mbps;
using ivnet::testing::single_switch;
using ivnet::testing::usec;

namespace {

SimOptions short_run() {
  SimOptions o;
  o.horizon = make_rational(1, 100);
  return o;
}

struct TraceLine {
  std::string time, port, kind;
  long packet;
};

std::vector<TraceLine> parse_trace(const std::string& text) {
  std::vector<TraceLine> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    TraceLine t;
    std::string packet;
    std::getline(fields, t.time, ',');
    fields.ignore(1);
    std::getline(fields, t.port, ',');
    fields.ignore(1);
    std::getline(fields, t.kind, ',');
    fields.ignore(1);
    std::getline(fields, packet, ',');
    t.packet = std::stol(packet);
    out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("ten aligned sources reach the single-switch bound exactly") {
  const Topology t = single_switch(10, 512, mbps(10), gbps(1), usec(250));
  const SimResult r = run(t, default_sources(t), short_run());
  const PortStats* out = r.port("out");
  REQUIRE(out != nullptr);
  CHECK(out->max_delay == usec(512, 100));
  CHECK(out->max_backlog == 5120);
  CHECK(r.steady);
  // Each input link holds one packet at a time.
  CHECK(r.port("in0")->max_delay == Rational(512) / mbps(10));
}

TEST_CASE("a lone source sees only its own transmission time") {
  const Topology t = single_switch(1, 12000, gbps(1), gbps(10), usec(100));
  const SimResult r = run(t, default_sources(t), short_run());
  CHECK(r.port("out")->max_delay == Rational(12000) / gbps(10));
  CHECK(r.port("out")->max_backlog == 12000);
  CHECK(r.flow("f0")->max_delay == Rational(12000) / gbps(1) + Rational(12000) / gbps(10));
  CHECK(r.flow("f0")->dropped == 0);
  CHECK(r.flow("f0")->delivered == 100);
}

TEST_CASE("the policer drops packets emitted too early") {
  const Topology t = single_switch(2, 512, mbps(10), gbps(1), usec(250));
  auto sources = default_sources(t);
  sources[0].emit_spacing = usec(125);
  const SimResult r = run(t, sources, short_run());
  CHECK(r.flow("f0")->dropped > 0);
  CHECK(r.flow("f0")->delivered == r.flow("f1")->delivered);
  CHECK_FALSE(r.drop_log.empty());
  CHECK(r.port("out")->max_delay <= usec(1024, 1000));
}

TEST_CASE("packet budgets stop a source") {
  const Topology t = single_switch(1, 512, mbps(10), gbps(1), usec(250));
  auto sources = default_sources(t);
  sources[0].packet_budget = 3;
  CHECK(run(t, sources, short_run()).flow("f0")->delivered == 3);
}

TEST_CASE("traces are deterministic and FIFO") {
  const Topology t = single_switch(10, 512, mbps(10), gbps(1), usec(250));
  auto sources = default_sources(t);
  randomize_offsets(sources, 42);
  std::ostringstream a, b;
  SimOptions oa = short_run(), ob = short_run();
  oa.trace = &a;
  ob.trace = &b;
  run(t, sources, oa);
  run(t, sources, ob);
  REQUIRE_FALSE(a.str().empty());
  CHECK(a.str() == b.str());

  std::map<std::string, std::vector<long>> arrivals, departures;
  std::map<std::string, double> last_depart;
  for (const auto& line : parse_trace(a.str())) {
    if (line.kind == "arrive") {
      arrivals[line.port].push_back(line.packet);
    } else {
      REQUIRE(line.kind == "depart");
      departures[line.port].push_back(line.packet);
      const double at = std::stod(line.time);
      CHECK(at >= last_depart[line.port]);
      last_depart[line.port] = at;
    }
  }
  CHECK(arrivals == departures);
}

TEST_CASE("aligned departures are back to back") {
  const Topology t = single_switch(3, 512, mbps(10), gbps(1), usec(250));
  std::ostringstream trace;
  SimOptions o = short_run();
  o.trace = &trace;
  run(t, default_sources(t), o);
  std::vector<std::string> first;
  for (const auto& line : parse_trace(trace.str()))
    if (line.port == "out" && line.kind == "depart" && first.size() < 3) first.push_back(line.time);
  CHECK(first == std::vector<std::string>{"51712.000", "52224.000", "52736.000"});
}

TEST_CASE("random offsets are reproducible per seed") {
  const Topology t = single_switch(4, 512, mbps(10), gbps(1), usec(250));
  auto a = default_sources(t), b = default_sources(t), c = default_sources(t);
  randomize_offsets(a, 1);
  randomize_offsets(b, 1);
  randomize_offsets(c, 2);
  bool same_ab = true, same_ac = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    same_ab = same_ab && a[i].start_offset == b[i].start_offset;
    same_ac = same_ac && a[i].start_offset == c[i].start_offset;
    CHECK(a[i].start_offset < a[i].min_spacing);
    CHECK(a[i].start_offset >= 0);
  }
  CHECK(same_ab);
  CHECK_FALSE(same_ac);
}

TEST_CASE("event budget and bad sources") {
  const Topology t = single_switch(2, 512, mbps(10), gbps(1), usec(250));
  SimOptions tiny = short_run();
  tiny.max_events = 10;
  CHECK_THROWS_AS(run(t, default_sources(t), tiny), SimulationError);
  auto bad = default_sources(t);
  bad[0].flow_id = "ghost";
  CHECK_THROWS_AS(run(t, bad, short_run()), ModelError);
}

TEST_CASE("compliance compares every maximum with its bound") {
  const Topology t = single_switch(10, 512, mbps(10), gbps(1), usec(250));
  const SimResult r = run(t, default_sources(t), short_run());
  const auto report = analyze(t, Partition::singletons(t), Mode::exact);
  const auto c = compare_with_bounds(r, report);
  CHECK(c.pass());
  CHECK(c.violations().empty());
  CHECK(c.min_slack() >= 0);

  AnalysisReport shrunk = report;
  for (auto& pb : shrunk.port_bounds) pb.delay_bound /= 2, pb.storage_bound /= 2;
  CHECK_FALSE(compare_with_bounds(r, shrunk).pass());
}
