// Small topologies shared by the test suites.
#pragma once

#include <map>
#include <random>
#include <string>

#include "ivnet/model.hpp"
#include "ivnet/propagate.hpp"

namespace ivnet::testing {

inline Rational mbps(long n) { return Rational(n) * 1'000'000; }
inline Rational gbps(long num, long den = 1) { return make_rational(num, den) * 1'000'000'000; }
inline Rational usec(long num, long den = 1) { return make_rational(num, den) / 1'000'000; }

inline FlowSpec make_flow(std::string id, std::int64_t count, const Rational& packet, const Rational& rate,
                          std::vector<std::string> route) {
  return {std::move(id), count, packet, FlowType{packet, rate}, std::move(route)};
}

/// `inputs` bridges, each on its own link into one switch, one flow each of
/// `packet` bits every `spacing`, all leaving on link "out" toward a sink.
inline Topology single_switch(int inputs, const Rational& packet, const Rational& in_rate, const Rational& out_rate,
                              const Rational& spacing) {
  Topology t;
  t.add_node({"sw", NodeKind::switch_node, Tier::fast});
  t.add_node({"sink", NodeKind::bridge, Tier::fast});
  t.add_link({"out", "sw", "sink", LineRate(out_rate)});
  for (int i = 0; i < inputs; ++i) {
    const std::string s = std::to_string(i);
    t.add_node({"dev" + s, NodeKind::bridge, Tier::slow});
    t.add_link({"in" + s, "dev" + s, "sw", LineRate(in_rate)});
    t.add_flow(make_flow("f" + s, 1, packet, packet / spacing, {"in" + s, "out"}));
  }
  return t;
}

struct RandomCase {
  Topology topology;
  Partition groups;
};

/// Feed-forward network: switches s0..s(n-1) with links only from lower to
/// higher index, a source bridge per flow and a sink bridge per switch.
/// At most 6 switches and 30 flows; utilisation stays below 90% per link.
inline RandomCase random_case(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const Rational rates[] = {mbps(10), mbps(100), gbps(1), gbps(10)};
  RandomCase rc;
  Topology& t = rc.topology;
  const int switches = pick(1, 6);
  std::vector<std::vector<int>> next(switches);
  for (int i = 0; i < switches; ++i) {
    const std::string s = "s" + std::to_string(i);
    t.add_node({s, NodeKind::switch_node, Tier::fast});
    t.add_node({"sink" + std::to_string(i), NodeKind::bridge, Tier::fast});
    t.add_link({s + ">sink", s, "sink" + std::to_string(i), LineRate(rates[pick(1, 3)])});
  }
  for (int i = 0; i < switches; ++i)
    for (int j = i + 1; j < switches; ++j)
      if (pick(0, 1) == 1) {
        next[i].push_back(j);
        t.add_link({"s" + std::to_string(i) + ">s" + std::to_string(j), "s" + std::to_string(i),
                    "s" + std::to_string(j), LineRate(rates[pick(1, 3)])});
      }

  std::map<std::string, Rational> load;
  const int flows = pick(1, 30);
  const int groups = pick(1, flows);
  for (int f = 0; f < flows; ++f) {
    const std::string id = "f" + std::to_string(f);
    const std::string src = "src" + std::to_string(f);
    int at = pick(0, switches - 1);
    t.add_node({src, NodeKind::bridge, Tier::slow});
    t.add_link({src + ">s" + std::to_string(at), src, "s" + std::to_string(at), LineRate(rates[pick(0, 3)])});
    std::vector<std::string> route{src + ">s" + std::to_string(at)};
    while (!next[at].empty() && pick(0, 2) > 0) {
      const int to = next[at][pick(0, static_cast<int>(next[at].size()) - 1)];
      route.push_back("s" + std::to_string(at) + ">s" + std::to_string(to));
      at = to;
    }
    route.push_back("s" + std::to_string(at) + ">sink");
    const Rational packet = Rational(8 * pick(64, 1500));
    const std::int64_t count = pick(1, 4);
    // Rate bounded by the headroom left on every link of the route.
    Rational headroom = -1;
    for (const auto& l : route) {
      const Rational room = t.link(l).rate.bps() * make_rational(9, 10) - load[l];
      if (headroom < 0 || room < headroom) headroom = room;
    }
    if (headroom <= 0) continue;
    const Rational rate = headroom * pick(1, 100) / 100 / count / 2;
    for (const auto& l : route) load[l] += rate * count;
    FlowSpec spec{id, count, packet, FlowType{packet * pick(1, 3), rate}, route};
    t.add_flow(spec);
    rc.groups.assign("g" + std::to_string(pick(0, groups - 1)), id);
  }
  return rc;
}

}  // namespace ivnet::testing
