#include "ivnet/scenarios.hpp"

#include <map>
#include <sstream>

namespace ivnet {

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::delay: return "delay";
    case Quantity::storage: return "storage";
    case Quantity::burst: return "burst";
  }
  return "?";
}

std::string_view to_string(GoldenKind k) {
  switch (k) {
    case GoldenKind::rendered: return "rendered";
    case GoldenKind::relative: return "relative";
    case GoldenKind::upper: return "upper";
  }
  return "?";
}

const Fixture& ScenarioBundle::fixture(std::string_view fixture_name) const {
  for (const auto& f : fixtures)
    if (f.name == fixture_name) return f;
  throw ModelError("scenario " + name + " has no fixture " + std::string(fixture_name));
}

namespace {

const Rational kSlowPacket = 512;   // B
const Rational kFastPacket = 12000;  // A

Rational mbps(long n) { return Rational(n) * 1'000'000; }
Rational gbps(long num, long den = 1) { return make_rational(num, den) * 1'000'000'000; }
Rational usec(long num, long den = 1) { return make_rational(num, den) / 1'000'000; }

std::string idx(const char* tag, int v) { return std::string(".") + tag + std::to_string(v); }

void node(Topology& t, std::string id, NodeKind kind, Tier tier) { t.add_node({std::move(id), kind, tier}); }

void link(Topology& t, std::string id, std::string from, std::string to, const Rational& rate) {
  t.add_link({std::move(id), std::move(from), std::move(to), LineRate(rate)});
}

FlowSpec flow(std::string id, std::int64_t count, const Rational& packet, const Rational& rate,
              std::vector<std::string> route) {
  return {std::move(id), count, packet, FlowType{packet, rate}, std::move(route)};
}

struct Variant {
  std::string name;
  Rational r2, r8, r9, r11;
  bool slow_processor;  // processor sends 4 slow flows per fast device instead of one fast flow
};

// ---- derivation fixtures -------------------------------------------------

struct Part {
  std::string group;
  std::int64_t flows;
  Rational rate;     // per flow
  Rational bracket;  // burst of everything else in the part's first-stage queue
};

struct Direct {
  std::string group;
  std::int64_t flows;
  Rational packet;
  Rational rate;  // per flow
};

struct Exit {
  std::string group;
  std::vector<std::pair<std::string, Rational>> links;
};

// Each part enters its own 10 Gb/s first-stage queue "4.k" next to a cross
// flow whose burst is the bracket term; the cross flow leaves there. All parts
// and the direct group then meet at link "8" and continue along their exits.
Fixture chain_fixture(std::string name, std::string purpose, const std::vector<Part>& parts,
                      const Direct& direct, const Rational& merge_rate, const std::vector<Exit>& exits) {
  Fixture fx{std::move(name), std::move(purpose), {}, {}};
  Topology& t = fx.topology;
  node(t, "core", NodeKind::switch_node, Tier::core);
  node(t, "merge", NodeKind::switch_node, Tier::core);
  node(t, "proc", NodeKind::processor, Tier::core);
  link(t, "8", "core", "merge", merge_rate);
  link(t, "6", "proc", "core", gbps(10));

  std::map<std::string, std::vector<std::string>> tail;
  for (const auto& e : exits) {
    std::string at = "merge";
    for (std::size_t i = 0; i < e.links.size(); ++i) {
      const bool last = i + 1 == e.links.size();
      std::string next = last ? "dst." + e.group : "hop." + e.group + "." + std::to_string(i);
      node(t, next, last ? NodeKind::bridge : NodeKind::switch_node, last ? Tier::slow : Tier::fast);
      link(t, e.links[i].first, at, next, e.links[i].second);
      tail[e.group].push_back(e.links[i].first);
      at = next;
    }
  }
  auto route_for = [&](const std::string& group, std::vector<std::string> head) {
    head.push_back("8");
    for (const auto& l : tail[group]) head.push_back(l);
    return head;
  };

  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& p = parts[k];
    const std::string s = std::to_string(k);
    node(t, "src." + s, NodeKind::bridge, Tier::slow);
    node(t, "x." + s, NodeKind::bridge, Tier::fast);
    node(t, "stage." + s, NodeKind::switch_node, Tier::fast);
    link(t, "in." + s, "src." + s, "stage." + s, gbps(10));
    link(t, "xin." + s, "x." + s, "stage." + s, gbps(10));
    link(t, "4." + s, "stage." + s, "core", gbps(10));
    const std::string id = p.group + "." + s;
    t.add_flow(flow(id, p.flows, kSlowPacket, p.rate, route_for(p.group, {"in." + s, "4." + s})));
    fx.groups.assign(p.group, id);
    FlowSpec cross{"X." + s, 1, kFastPacket, FlowType{p.bracket, mbps(1)}, {"xin." + s, "4." + s}};
    t.add_flow(cross);
    fx.groups.assign("X." + s, cross.id);
  }
  t.add_flow(flow(direct.group, direct.flows, direct.packet, direct.rate, route_for(direct.group, {"6"})));
  fx.groups.assign(direct.group, direct.group);
  return fx;
}

std::vector<Part> quarter(const std::string& group, std::int64_t flows, const Rational& rate, const Rational& bracket) {
  return std::vector<Part>(4, Part{group, flows, rate, bracket});
}

std::vector<Part> concat(std::vector<Part> a, const std::vector<Part>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// 160 slow flows over four 1 Gb/s links and the four fast devices meet at "4".
Fixture port4_fixture() {
  Fixture fx{"port4", "northbound zone port: 160 slow packets plus 4 large packets", {}, {}};
  Topology& t = fx.topology;
  node(t, "zone", NodeKind::switch_node, Tier::core);
  node(t, "core", NodeKind::switch_node, Tier::core);
  link(t, "4", "zone", "core", gbps(10));
  for (int k = 0; k < 4; ++k) {
    const std::string s = std::to_string(k);
    node(t, "fast-switch." + s, NodeKind::bridge, Tier::fast);
    node(t, "fast-device." + s, NodeKind::bridge, Tier::fast);
    link(t, "2." + s, "fast-switch." + s, "zone", gbps(1));
    link(t, "3." + s, "fast-device." + s, "zone", gbps(5));
    t.add_flow(flow("slow." + s, 40, kSlowPacket, mbps(2), {"2." + s, "4"}));
    t.add_flow(flow("fast." + s, 1, kFastPacket, k < 3 ? gbps(24, 10) : gbps(8, 10), {"3." + s, "4"}));
    fx.groups.assign("slow", "slow." + s);
    fx.groups.assign("fast." + s, "fast." + s);
  }
  return fx;
}

std::vector<Fixture> fixtures_for(const Variant& v) {
  const Rational B = kSlowPacket, A = kFastPacket;
  const Direct proc_large{"P", 4, A, v.slow_processor ? mbps(2) : gbps(12, 10)};
  std::vector<Fixture> out;
  out.push_back(chain_fixture(
      "port9", "burst of the 40 slow flows leaving one link (9), and their delay there",
      concat(quarter("G", 10, mbps(2), 40 * B + 4 * A), quarter("Gc", 10, mbps(2), 40 * B + 4 * A)), proc_large,
      v.r8, {{"G", {{"9", v.r9}}}}));
  out.push_back(chain_fixture(
      "port10", "burst of the 4 slow flows toward one slow device, and their delay on link (10)",
      concat(quarter("H", 1, mbps(2), 160 * B + 4 * A), quarter("Hc", 40, mbps(2), 160 * B + 4 * A)), proc_large,
      v.r8, {{"H", {{"9", v.r9}, {"10", mbps(10)}}}}));
  std::vector<Part> four_g;
  for (int g = 1; g <= 4; ++g) four_g = concat(four_g, quarter("G" + std::to_string(g), 10, mbps(2), 40 * B + 4 * A));
  out.push_back(chain_fixture("port8", "link (8) carrying four slow destination groups and 4 large processor packets",
                              four_g, {"V", 4, A, proc_large.rate}, v.r8, {{"V", {{"11", v.r11}}}}));
  if (v.slow_processor)
    out.push_back(chain_fixture("port11", "processor burst of 4 slow packets toward one fast device",
                                four_g, {"V", 4, B, mbps(2)}, v.r8, {{"V", {{"11", v.r11}}}}));
  out.push_back(port4_fixture());
  return out;
}

// ---- full topologies ------------------------------------------------------

ScenarioBundle build(const Variant& v) {
  ScenarioBundle b;
  b.name = v.name;
  Topology& t = b.topology;
  node(t, "cc", NodeKind::switch_node, Tier::core);
  node(t, "proc", NodeKind::processor, Tier::core);
  for (int z = 0; z < 4; ++z) {
    const std::string zs = idx("z", z);
    node(t, "zc" + zs, NodeKind::switch_node, Tier::core);
    link(t, "l4" + zs, "zc" + zs, "cc", gbps(10));
    link(t, "l8" + zs, "cc", "zc" + zs, v.r8);
    link(t, "l5" + zs, "cc", "proc", gbps(10));
    link(t, "l6" + zs, "proc", "cc", gbps(10));
    for (int f = 0; f < 4; ++f) {
      const std::string fs = zs + idx("f", f);
      node(t, "fs" + fs, NodeKind::switch_node, Tier::fast);
      link(t, "l2" + fs, "fs" + fs, "zc" + zs, v.r2);
      link(t, "l9" + fs, "zc" + zs, "fs" + fs, v.r9);
      for (int d = 0; d < 10; ++d) {
        const std::string ds = fs + idx("d", d);
        node(t, "sd" + ds, NodeKind::bridge, Tier::slow);
        link(t, "l1" + ds, "sd" + ds, "fs" + fs, mbps(10));
        link(t, "l10" + ds, "fs" + fs, "sd" + ds, mbps(10));
      }
    }
    for (int k = 0; k < 4; ++k) {
      const std::string ks = zs + idx("k", k);
      node(t, "fd" + ks, NodeKind::bridge, Tier::fast);
      link(t, "l3" + ks, "fd" + ks, "zc" + zs, gbps(5));
      link(t, "l11" + ks, "zc" + zs, "fd" + ks, v.r11);
    }
  }

  for (int z = 0; z < 4; ++z) {
    for (int f = 0; f < 4; ++f)
      for (int d = 0; d < 10; ++d)
        for (int j = 0; j < 4; ++j) {
          // Each slow device talks to devices in the other three zones.
          const int z2 = (z + 1 + j % 3) % 4, d2 = (d + j) % 10;
          const std::string src = idx("z", z) + idx("f", f) + idx("d", d);
          const std::string dst = idx("z", z2) + idx("f", f) + idx("d", d2);
          const std::string id = "slow" + src + idx("j", j);
          t.add_flow(flow(id, 1, kSlowPacket, mbps(2),
                          {"l1" + src, "l2" + idx("z", z) + idx("f", f), "l4" + idx("z", z), "l8" + idx("z", z2),
                           "l9" + idx("z", z2) + idx("f", f), "l10" + dst}));
          b.groups.assign("H" + dst, id);
        }
    for (int k = 0; k < 4; ++k) {
      const std::string ks = idx("z", z) + idx("k", k);
      t.add_flow(flow("fast" + ks, 1, kFastPacket, k < 3 ? gbps(24, 10) : gbps(8, 10),
                      {"l3" + ks, "l4" + idx("z", z), "l5" + idx("z", z)}));
      b.groups.assign("fast" + ks, "fast" + ks);
      const std::vector<std::string> down{"l6" + idx("z", z), "l8" + idx("z", z), "l11" + ks};
      t.add_flow(v.slow_processor ? flow("proc" + ks, 4, kSlowPacket, mbps(2), down)
                                  : flow("proc" + ks, 1, kFastPacket, gbps(12, 10), down));
      b.groups.assign("proc" + ks, "proc" + ks);
    }
  }
  b.sources = default_sources(t);
  b.fixtures = fixtures_for(v);
  b.reference_route = t.flow("slow.z0.f0.d0.j0").route;
  b.notes = {
      "slow spacing is 256 us so that 512 b packets average exactly 2 Mb/s; the quoted minimum spacing is 250 us",
      "cameras are shaped to one 12,000 b packet per 5 us (2.4 Gb/s) although their frame pattern averages 1.8 Gb/s",
      "the port (9) derivation counts 40 cross flows on link (8) while 160 slow flows share each link (8) in the full "
      "topology; fixture port9 follows the derivation counts",
  };
  if (v.slow_processor)
    b.notes.push_back(
        "port (11) uses a processor burst of 4 slow packets while port (8) and the port (9)/(10) derivations keep 4 "
        "large packets");
  return b;
}

// ---- golden tables ---------------------------------------------------------

GoldenTerm full(std::string link_id, Quantity q, Rational w = 1) { return {"", std::move(link_id), q, "", std::move(w)}; }
GoldenTerm fx(std::string f, std::string link_id, Quantity q, Rational w = 1) {
  return {std::move(f), std::move(link_id), q, "", std::move(w)};
}
GoldenTerm burst(std::string f, std::string group, std::string link_id) {
  return {std::move(f), std::move(link_id), Quantity::burst, std::move(group), 1};
}

GoldenRow row(std::string key, int criterion, Mode mode, std::string label, Quantity q, std::vector<GoldenTerm> terms,
              Rational printed, std::string text, Rational resolution, GoldenKind kind, std::string citation) {
  GoldenRow r;
  r.key = std::move(key);
  r.criterion = criterion;
  r.mode = mode;
  r.label = std::move(label);
  r.quantity = q;
  r.terms = std::move(terms);
  r.printed = std::move(printed);
  r.printed_text = std::move(text);
  r.resolution = std::move(resolution);
  r.kind = kind;
  r.citation = std::move(citation);
  return r;
}

const char* kPort1 = "l1.z0.f0.d0";
const char* kPort2 = "l2.z0.f0";
const char* kPort4 = "l4.z0";
const char* kPort5 = "l5.z0";
const char* kPort8 = "l8.z0";
const char* kPort10 = "l10.z0.f0.d0";

std::vector<GoldenRow> network1_golden() {
  using Q = Quantity;
  using K = GoldenKind;
  const Mode X = Mode::exact, S = Mode::small_flow;
  const Rational us = usec(1), kb = 1000;
  return {
      // exact evaluation
      row("n1.exact.beta_g8", 1, X, "beta(G,8)", Q::burst, {burst("port9", "G", "8")}, 21581, "21,581 b", 1, K::rendered,
          "exact derivation for port (9): slow flows toward one link (9)"),
      row("n1.exact.port9", 1, X, "port (9) delay", Q::delay, {fx("port9", "9", Q::delay)}, usec(216, 10), "21.6 us",
          us / 10, K::rendered, "exact derivation for port (9)"),
      row("n1.exact.beta_h9", 2, X, "beta(H,9)", Q::burst, {burst("port10", "H", "9")}, 2260, "2,260 b", 1,
          K::rendered, "exact derivation for port (10): slow flows toward one slow device"),
      row("n1.exact.port10", 2, X, "port (10) delay", Q::delay, {fx("port10", "10", Q::delay)}, usec(226), "226 us", us,
          K::rendered, "exact derivation for port (10)"),
      row("n1.exact.beta_v8", 2, X, "beta(V,8)", Q::burst, {burst("port8", "V", "8")}, 132 * kb, "132 kb", kb, K::upper,
          "exact derivation for port (11): processor flows toward one fast device"),
      row("n1.exact.port11", 2, X, "port (11) delay", Q::delay, {fx("port8", "11", Q::delay)}, usec(264, 10), "26.4 us",
          us / 10, K::rendered, "exact derivation for port (11)"),
      row("n1.exact.switch_a", 2, X, "switch A memory", Q::storage,
          {full(kPort2, Q::storage), fx("port10", "10", Q::storage, 10)}, 28 * kb, "28 kb", kb, K::rendered,
          "exact derivation: port (2) plus ten ports (10)"),
      row("n1.exact.switch_be", 2, X, "switch B+E memory", Q::storage,
          {fx("port4", "4", Q::storage), fx("port8", "8", Q::storage)}, 262 * kb, "262 kb", kb, K::rendered,
          "exact derivation: port (4) plus the flows arriving via (8)"),
      row("n1.exact.switch_c", 2, X, "switch C memory", Q::storage,
          {fx("port8", "8", Q::storage, 4), full(kPort5, Q::storage, 4)}, 576 * kb, "576 kb", kb, K::rendered,
          "exact derivation: four ports (8) plus the processor ports"),
      row("n1.exact.port8", 0, X, "port (8) delay", Q::delay, {fx("port8", "8", Q::delay)}, usec(132, 10), "13.2 us",
          us / 10, K::rendered, "exact derivation for port (8)"),
      row("n1.exact.port4", 0, X, "port (4) delay", Q::delay, {fx("port4", "4", Q::delay)}, usec(13), "13 us", us,
          K::rendered, "exact derivation for port (4)"),
      row("n1.exact.port2", 0, X, "port (2) delay", Q::delay, {full(kPort2, Q::delay)}, usec(51, 10), "5.1 us", us / 10,
          K::rendered, "exact derivation for port (2)"),
      row("n1.exact.path", 5, X, "slow bridge to slow bridge, across zones", Q::delay,
          {full(kPort1, Q::delay), full(kPort2, Q::delay), fx("port4", "4", Q::delay), fx("port8", "8", Q::delay),
           fx("port9", "9", Q::delay), fx("port10", "10", Q::delay)},
          usec(500), "0.5 ms", usec(100), K::upper, "end-to-end bound for the first network"),
      // small-flow approximation
      row("n1.small.port2", 3, S, "link (2) delay", Q::delay, {full(kPort2, Q::delay)}, usec(51, 10), "5.1 us", us / 10,
          K::rendered, "small-flow analysis of link (2)"),
      row("n1.small.port4", 3, S, "link (4) delay", Q::delay, {full(kPort4, Q::delay)}, usec(13), "13 us", us,
          K::rendered, "small-flow analysis of link (4)"),
      row("n1.small.port8", 3, S, "link (8) delay", Q::delay, {full(kPort8, Q::delay)}, usec(13), "13 us", us,
          K::rendered, "small-flow analysis of link (8)"),
      row("n1.small.port11", 3, S, "link (11) delay", Q::delay, {fx("port8", "11", Q::delay)}, usec(26), "26 us", us,
          K::rendered, "small-flow analysis of link (11)"),
      row("n1.small.port1", 3, S, "link (1) delay", Q::delay, {full(kPort1, Q::delay)}, usec(200), "200 us", 10 * us,
          K::rendered, "small-flow analysis of link (1)"),
      row("n1.small.port10", 3, S, "link (10) delay", Q::delay, {full(kPort10, Q::delay)}, usec(200), "200 us",
          10 * us, K::rendered, "small-flow analysis of link (10)"),
      row("n1.small.switch_af", 3, S, "switch A+F memory", Q::storage,
          {full(kPort2, Q::storage), full(kPort10, Q::storage, 10)}, 25 * kb, "25 kb", kb, K::rendered,
          "small-flow analysis: fast switch ports"),
      row("n1.small.switch_be", 3, S, "switch B+E memory", Q::storage,
          {full(kPort4, Q::storage), full(kPort8, Q::storage)}, 260 * kb, "260 kb", kb, K::rendered,
          "small-flow analysis: zone switch ports"),
      row("n1.small.switch_cd", 3, S, "switch C+D memory", Q::storage,
          {full(kPort8, Q::storage, 4), full(kPort5, Q::storage, 4)}, 568 * kb, "568 kb", kb, K::rendered,
          "small-flow analysis: central switch ports"),
  };
}

std::vector<GoldenRow> network2_golden() {
  using Q = Quantity;
  using K = GoldenKind;
  const Mode X = Mode::exact;
  const Rational us = usec(1), kb = 1000, pct = make_rational(1, 100);
  auto rel = [&](GoldenRow r) {
    r.kind = K::relative;
    r.tolerance = pct;
    return r;
  };
  return {
      rel(row("n2.exact.beta_g8", 4, X, "beta(G,8)", Q::burst, {burst("port9", "G", "8")}, make_rational(224, 10) * kb,
              "22.4 kb", kb / 10, K::relative, "second-network derivation for port (9)")),
      rel(row("n2.exact.port9", 4, X, "port (9) delay", Q::delay, {fx("port9", "9", Q::delay)}, usec(224), "224 us", us,
              K::relative, "second-network derivation for port (9)")),
      rel(row("n2.exact.port10_storage", 4, X, "port (10) storage", Q::storage, {fx("port10", "10", Q::storage)},
              make_rational(49, 10) * kb, "4.9 kb", kb / 10, K::relative, "second-network derivation for port (10)")),
      rel(row("n2.exact.port10", 4, X, "port (10) delay", Q::delay, {fx("port10", "10", Q::delay)}, usec(490), "490 us",
              us * 10, K::relative, "second-network derivation for port (10)")),
      rel(row("n2.exact.port11_storage", 4, X, "port (11) storage", Q::storage, {fx("port11", "11", Q::storage)},
              make_rational(42, 10) * kb, "4.2 kb", kb / 10, K::relative, "second-network derivation for port (11)")),
      rel(row("n2.exact.port11", 4, X, "port (11) delay", Q::delay, {fx("port11", "11", Q::delay)}, usec(420), "420 us",
              us * 10, K::relative, "second-network derivation for port (11)")),
      rel(row("n2.exact.port8", 4, X, "port (8) delay", Q::delay, {fx("port8", "8", Q::delay)}, usec(330), "330 us",
              us * 10, K::relative, "second-network derivation for port (8)")),
      rel(row("n2.exact.port2", 4, X, "port (2) delay", Q::delay, {full(kPort2, Q::delay)}, usec(51), "51 us", us,
              K::relative, "second-network derivation for port (2)")),
      rel(row("n2.exact.switch_a", 4, X, "switch A memory", Q::storage,
              {full(kPort2, Q::storage), fx("port10", "10", Q::storage, 10)}, 54 * kb, "54 kb", kb, K::relative,
              "second-network derivation: port (2) plus ten ports (10)")),
      rel(row("n2.exact.switch_be", 4, X, "switch B+E memory", Q::storage,
              {fx("port4", "4", Q::storage), fx("port8", "8", Q::storage)}, 262 * kb, "262 kb", kb, K::relative,
              "second-network derivation: port (4) plus the flows arriving via (8)")),
      rel(row("n2.exact.switch_c", 4, X, "switch C memory", Q::storage,
              {fx("port8", "8", Q::storage, 4), full(kPort5, Q::storage, 4)}, 576 * kb, "576 kb", kb, K::relative,
              "second-network derivation: four ports (8) plus the processor ports")),
      row("n2.exact.port4", 0, X, "port (4) delay", Q::delay, {fx("port4", "4", Q::delay)}, usec(13), "13 us", us,
          K::rendered, "second-network derivation for port (4)"),
      row("n2.exact.path", 5, X, "slow bridge to slow bridge, across zones", Q::delay,
          {full(kPort1, Q::delay), full(kPort2, Q::delay), fx("port4", "4", Q::delay), fx("port8", "8", Q::delay),
           fx("port9", "9", Q::delay), fx("port10", "10", Q::delay)},
          usec(1300), "1.3 ms", usec(100), K::upper, "end-to-end bound for the second network"),
  };
}

// ---- evaluation ------------------------------------------------------------

struct Analysis {
  BurstMap bursts;
  AnalysisReport report;
};

class Evaluator {
 public:
  explicit Evaluator(const ScenarioBundle& b) : bundle_(b) {}
  void use_report(const AnalysisReport& r) { given_ = &r; }

  Rational term(const GoldenTerm& t, Mode mode) {
    if (t.fixture.empty() && given_ && t.quantity != Quantity::burst) return t.weight * pick(*given_, t);
    const Analysis& a = analysis(t.fixture, mode);
    if (t.quantity == Quantity::burst) return t.weight * a.bursts.at(t.group, t.link);
    return t.weight * pick(a.report, t);
  }

 private:
  static Rational pick(const AnalysisReport& r, const GoldenTerm& t) {
    const PortBound& p = r.port(t.link);
    return t.quantity == Quantity::delay ? p.delay_bound : p.storage_bound;
  }

  const Analysis& analysis(const std::string& fixture, Mode mode) {
    auto key = std::make_pair(fixture, mode);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const Topology& t = fixture.empty() ? bundle_.topology : bundle_.fixture(fixture).topology;
    const Partition& p = fixture.empty() ? bundle_.groups : bundle_.fixture(fixture).groups;
    BurstMap bm = propagate_bursts(t, p, mode);
    AnalysisReport rep = port_report(t, bm);
    return cache_.emplace(key, Analysis{std::move(bm), std::move(rep)}).first->second;
  }

  const ScenarioBundle& bundle_;
  const AnalysisReport* given_ = nullptr;
  std::map<std::pair<std::string, Mode>, Analysis> cache_;
};

GoldenResult judge(const GoldenRow& row, Rational computed) {
  GoldenResult r{&row, std::move(computed), false, 0};
  const Rational diff = r.computed - row.printed;
  switch (row.kind) {
    case GoldenKind::rendered:
      r.deviation = diff;
      r.pass = abs(diff) < row.resolution;
      break;
    case GoldenKind::relative:
      r.deviation = diff / row.printed;
      r.pass = abs(r.deviation) <= row.tolerance;
      break;
    case GoldenKind::upper:
      r.deviation = diff;
      r.pass = r.computed <= row.printed;
      break;
  }
  return r;
}

std::vector<GoldenResult> evaluate(const ScenarioBundle& bundle, Evaluator& ev, std::optional<Mode> mode) {
  std::vector<GoldenResult> out;
  for (const auto& row : bundle.golden) {
    if (mode && row.mode != *mode) continue;
    Rational sum = 0;
    for (const auto& t : row.terms) sum += ev.term(t, row.mode);
    out.push_back(judge(row, sum));
  }
  return out;
}

std::string human(const Rational& v, Quantity q) {
  if (q == Quantity::delay) return to_decimal(v * 1'000'000, 4) + " us";
  return to_decimal(v, 3) + " b";
}

}  // namespace

ScenarioBundle network1() {
  ScenarioBundle b = build({"network1", gbps(1), gbps(10), gbps(1), gbps(5), false});
  b.golden = network1_golden();
  return b;
}

ScenarioBundle network2() {
  ScenarioBundle b = build({"network2", mbps(100), mbps(400), mbps(100), mbps(10), true});
  b.golden = network2_golden();
  return b;
}

std::vector<std::string> scenario_names() { return {"network1", "network2"}; }

ScenarioBundle scenario_by_name(std::string_view name) {
  if (name == "network1") return network1();
  if (name == "network2") return network2();
  throw ModelError("unknown scenario '" + std::string(name) + "' (expected network1 or network2)");
}

Topology fast_network(const ScenarioBundle& bundle) {
  const Topology& t = bundle.topology;
  return t.with_flows([&](const FlowSpec& f) {
    const Node* from = t.find_node(t.link(f.route.front()).from);
    return !from || from->tier != Tier::slow;
  });
}

std::string link_class(std::string_view link_id) {
  if (link_id.size() < 2 || link_id[0] != 'l') return {};
  const auto dot = link_id.find('.');
  const auto digits = link_id.substr(1, dot == std::string_view::npos ? std::string_view::npos : dot - 1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos) return {};
  const int n = std::stoi(std::string(digits));
  if (n < 1 || n > 11 || n == 7) return {};
  return "(" + std::string(digits) + ")";
}

std::vector<GoldenResult> evaluate_golden(const ScenarioBundle& bundle, std::optional<Mode> mode) {
  Evaluator ev(bundle);
  return evaluate(bundle, ev, mode);
}

std::vector<GoldenResult> evaluate_golden(const ScenarioBundle& bundle, const AnalysisReport& report) {
  for (const auto& p : report.port_bounds)
    if (!bundle.topology.find_link(p.link_id))
      throw ModelError("report port " + p.link_id + " is not part of scenario " + bundle.name);
  Evaluator ev(bundle);
  ev.use_report(report);
  return evaluate(bundle, ev, report.mode);
}

bool all_pass(const std::vector<GoldenResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::string render_golden(const std::vector<GoldenResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    const GoldenRow& row = *r.row;
    os << (r.pass ? "PASS " : "FAIL ") << row.key << "  [" << to_string(row.mode) << "] " << row.label
       << "\n     computed " << human(r.computed, row.quantity) << "  printed " << row.printed_text << "  ("
       << to_string(row.kind);
    if (row.kind == GoldenKind::relative)
      os << " " << to_decimal(r.deviation * 100, 2) << "% of allowed " << to_decimal(row.tolerance * 100, 2) << "%";
    os << ")  source: " << row.citation << '\n';
  }
  return os.str();
}

std::string render_report(const AnalysisReport& report, const ScenarioBundle& bundle) {
  return render_golden(evaluate_golden(bundle, report));
}

}  // namespace ivnet
