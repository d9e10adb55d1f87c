#include "ivnet/sim.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>
#include <queue>
#include <random>

namespace ivnet {

std::vector<ShapedSource> default_sources(const Topology& topology) {
  std::vector<ShapedSource> out;
  for (const auto& [id, flow] : topology.flows()) {
    if (flow.per_flow.rate <= 0) throw ModelError("flow " + id + " has no sustained rate to shape");
    for (std::int64_t m = 0; m < flow.count; ++m)
      out.push_back({id, m, flow.packet_bits, flow.packet_bits / flow.per_flow.rate, 0, std::nullopt, std::nullopt});
  }
  return out;
}

void randomize_offsets(std::vector<ShapedSource>& sources, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 1023);
  for (auto& s : sources) s.start_offset = s.min_spacing * pick(rng) / 1024;
}

const PortStats* SimResult::port(std::string_view id) const {
  for (const auto& p : ports)
    if (p.link_id == id) return &p;
  return nullptr;
}

const FlowStats* SimResult::flow(std::string_view id) const {
  for (const auto& f : flows)
    if (f.flow_id == id) return &f;
  return nullptr;
}

namespace {

using Tick = std::int64_t;

struct Arrival {
  Tick t;
  std::int32_t in_rank;  // -1 for packets entering from their source
  std::int32_t hop;
  std::int64_t pkt;
};

bool later(const Arrival& a, const Arrival& b) {
  if (a.t != b.t) return a.t > b.t;
  if (a.in_rank != b.in_rank) return a.in_rank > b.in_rank;
  return a.pkt > b.pkt;
}

struct Plan {
  std::int32_t flow;                 // index into flow stats
  std::vector<std::int32_t> route;   // link indices
  std::vector<Tick> service;         // per hop
};

struct Packet {
  std::int32_t source;
  Tick emitted;
  bool measured;
};

Tick add(Tick a, Tick b) {
  Tick r;
  if (__builtin_add_overflow(a, b, &r)) throw SimulationError("simulation time overflows the tick grid");
  return r;
}

Tick ticks(const Rational& v, const mpz_class& per_second) {
  Rational x = v * per_second;
  if (x.get_den() != 1 || !x.get_num().fits_slong_p())
    throw SimulationError("value " + to_exact_string(v) + " does not fit the tick grid");
  return x.get_num().get_si();
}

// One port's streams, keyed by where packets come from.
struct Port {
  std::vector<std::pair<std::int64_t, std::vector<Arrival>>> streams;
  std::vector<Arrival>& stream(std::int64_t key) {
    for (auto& [k, s] : streams)
      if (k == key) return s;
    streams.emplace_back(key, std::vector<Arrival>{});
    return streams.back().second;
  }
};

}  // namespace

SimResult run(const Topology& topology, const std::vector<ShapedSource>& sources, const SimOptions& options) {
  if (options.horizon <= 0) throw ModelError("horizon must be positive");
  require_valid(topology);

  std::vector<std::string> link_ids;
  std::map<std::string, std::int32_t, std::less<>> link_index;
  for (const auto& [id, link] : topology.links()) {
    link_index.emplace(id, static_cast<std::int32_t>(link_ids.size()));
    link_ids.push_back(id);
  }
  std::vector<std::string> flow_ids;
  std::map<std::string, std::int32_t, std::less<>> flow_index;
  for (const auto& [id, flow] : topology.flows()) {
    flow_index.emplace(id, static_cast<std::int32_t>(flow_ids.size()));
    flow_ids.push_back(id);
  }

  // Common time grid: every duration becomes an integer number of ticks.
  mpz_class per_second = options.horizon.get_den();
  auto absorb = [&](const Rational& v) { mpz_lcm(per_second.get_mpz_t(), per_second.get_mpz_t(), v.get_den().get_mpz_t()); };
  for (const auto& s : sources) {
    const FlowSpec* f = topology.find_flow(s.flow_id);
    if (!f) throw ModelError("source names unknown flow " + s.flow_id);
    if (s.member < 0 || s.member >= f->count)
      throw ModelError("source member " + std::to_string(s.member) + " out of range for flow " + s.flow_id);
    if (s.packet_bits <= 0) throw ModelError("source for flow " + s.flow_id + " has no packet size");
    if (s.min_spacing <= 0 || (s.emit_spacing && *s.emit_spacing <= 0))
      throw ModelError("source for flow " + s.flow_id + " needs a positive spacing");
    if (s.start_offset < 0) throw ModelError("source for flow " + s.flow_id + " has a negative offset");
    absorb(s.min_spacing);
    absorb(s.start_offset);
    if (s.emit_spacing) absorb(*s.emit_spacing);
    for (const auto& l : f->route) absorb(Rational(s.packet_bits / topology.link(l).rate.bps()));
  }
  const Tick horizon = ticks(options.horizon, per_second);
  if (horizon > std::numeric_limits<Tick>::max() / 4) throw SimulationError("horizon too long for the tick grid");
  const Tick quiet_from = horizon - horizon / 5;
  // Sources keep running past the horizon so that no measured packet sees
  // them switch off; those extra packets are simulated but not measured.
  const Tick run_until = add(horizon, horizon / 10);

  // Emissions through the source policers.
  std::vector<Plan> plans;
  std::vector<Packet> packets;
  std::vector<Port> ports(link_ids.size());
  std::vector<FlowStats> flows(flow_ids.size());
  for (std::size_t i = 0; i < flow_ids.size(); ++i) flows[i].flow_id = flow_ids[i];
  SimResult result;
  result.horizon = options.horizon;
  std::int64_t planned_events = 0;

  for (std::size_t si = 0; si < sources.size(); ++si) {
    const auto& s = sources[si];
    const FlowSpec& f = topology.flow(s.flow_id);
    Plan plan{flow_index.at(s.flow_id), {}, {}};
    for (const auto& l : f.route) {
      plan.route.push_back(link_index.at(l));
      plan.service.push_back(ticks(s.packet_bits / topology.link(l).rate.bps(), per_second));
    }
    const Tick gap = ticks(s.emit_spacing.value_or(s.min_spacing), per_second);
    const Tick min_gap = ticks(s.min_spacing, per_second);
    auto& stream = ports[plan.route.front()].stream(-1 - static_cast<std::int64_t>(si));
    Tick last = 0;
    bool any = false;
    std::int64_t emitted = 0;
    for (Tick t = ticks(s.start_offset, per_second); t < run_until; t = add(t, gap)) {
      if (s.packet_budget && emitted >= *s.packet_budget) break;
      ++emitted;
      if (any && t - last < min_gap) {
        if (t >= horizon) continue;
        ++flows[plan.flow].dropped;
        if (result.drop_log.size() < 100)
          result.drop_log.push_back("policer dropped " + s.flow_id + "#" + std::to_string(s.member) + " at " +
                                    format_seconds(Rational(t) / per_second));
        continue;
      }
      any = true;
      last = t;
      planned_events += static_cast<std::int64_t>(plan.route.size());
      if (planned_events > options.max_events)
        throw SimulationError("event budget of " + std::to_string(options.max_events) + " exceeded");
      stream.push_back({t, -1, 0, static_cast<std::int64_t>(packets.size())});
      packets.push_back({static_cast<std::int32_t>(si), t, t < horizon});
    }
    plans.push_back(std::move(plan));
  }

  std::vector<Tick> port_max(link_ids.size(), -1);
  std::vector<std::int64_t> port_count(link_ids.size(), 0);
  std::vector<Tick> flow_max(flow_ids.size(), -1);

  struct Served {
    Tick arrival, finish;
    std::int64_t pkt;
  };
  std::vector<Served> served;
  std::vector<Arrival> merged;

  for (const auto& id : topological_queue_order(topology)) {
    const std::int32_t li = link_index.at(id);
    auto& port = ports[li];
    if (port.streams.empty()) continue;

    merged.clear();
    if (port.streams.size() == 1) {
      merged.swap(port.streams.front().second);
    } else {
      using Head = std::pair<Arrival, std::size_t>;
      auto cmp = [](const Head& a, const Head& b) { return later(a.first, b.first); };
      std::priority_queue<Head, std::vector<Head>, decltype(cmp)> heap(cmp);
      std::vector<std::size_t> pos(port.streams.size(), 0);
      for (std::size_t k = 0; k < port.streams.size(); ++k)
        if (!port.streams[k].second.empty()) heap.push({port.streams[k].second[0], k});
      while (!heap.empty()) {
        auto [a, k] = heap.top();
        heap.pop();
        merged.push_back(a);
        const auto& s = port.streams[k].second;
        if (++pos[k] < s.size()) heap.push({s[pos[k]], k});
      }
    }
    port.streams.clear();
    port.streams.shrink_to_fit();

    served.clear();
    Tick busy = std::numeric_limits<Tick>::min();
    for (const auto& a : merged) {
      const Packet& p = packets[a.pkt];
      const Plan& plan = plans[p.source];
      const Tick finish = add(std::max(a.t, busy), plan.service[a.hop]);
      busy = finish;
      const Tick d = finish - a.t;
      if (p.measured) {
        if (d > port_max[li]) {
          port_max[li] = d;
          if (p.emitted >= quiet_from) result.steady = false;
        }
        ++port_count[li];
      }
      if (options.trace) served.push_back({a.t, finish, a.pkt});
      if (static_cast<std::size_t>(a.hop + 1) < plan.route.size()) {
        ports[plan.route[a.hop + 1]].stream(li).push_back({finish, li, a.hop + 1, a.pkt});
      } else if (p.measured) {
        auto& fs = flows[plan.flow];
        ++fs.delivered;
        if (finish - p.emitted > flow_max[plan.flow]) {
          flow_max[plan.flow] = finish - p.emitted;
          if (p.emitted >= quiet_from) result.steady = false;
        }
      }
    }
    result.events += static_cast<std::int64_t>(merged.size());

    if (options.trace) {
      // Departures are in FIFO order; interleave with arrivals by time.
      const Rational rate = topology.link(id).rate.bps();
      auto ns = [&](Tick t) { return to_decimal(Rational(t) * 1'000'000'000 / per_second, 3); };
      auto bits = [&](Tick span) { return to_exact_string(Rational(span) / per_second * rate); };
      std::size_t ai = 0, di = 0;
      Tick last_finish = std::numeric_limits<Tick>::min();
      while (di < served.size()) {
        if (ai < served.size() && served[ai].arrival < served[di].finish) {
          last_finish = served[ai].finish;
          *options.trace << ns(served[ai].arrival) << ", " << id << ", arrive, " << served[ai].pkt << ", "
                         << bits(served[ai].finish - served[ai].arrival) << '\n';
          ++ai;
        } else {
          const Tick f = served[di].finish;
          *options.trace << ns(f) << ", " << id << ", depart, " << served[di].pkt << ", "
                         << bits(std::max<Tick>(0, last_finish - f)) << '\n';
          ++di;
        }
      }
    }
  }

  for (std::size_t i = 0; i < link_ids.size(); ++i) {
    if (port_count[i] == 0) continue;
    const Seconds d = Rational(port_max[i]) / per_second;
    result.ports.push_back({link_ids[i], d, d * topology.link(link_ids[i]).rate.bps(), port_count[i]});
  }
  for (std::size_t i = 0; i < flows.size(); ++i) {
    if (flows[i].delivered == 0 && flows[i].dropped == 0) continue;
    flows[i].max_delay = flow_max[i] < 0 ? Rational(0) : Rational(flow_max[i]) / per_second;
    result.flows.push_back(std::move(flows[i]));
  }
  return result;
}

bool ComplianceReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.ok(); });
}

std::vector<const ComplianceEntry*> ComplianceReport::violations() const {
  std::vector<const ComplianceEntry*> out;
  for (const auto& e : entries)
    if (!e.ok()) out.push_back(&e);
  return out;
}

Rational ComplianceReport::min_slack() const {
  if (entries.empty()) return 0;
  Rational m = entries.front().slack();
  for (const auto& e : entries) m = std::min(m, e.slack());
  return m;
}

ComplianceReport compare_with_bounds(const SimResult& result, const AnalysisReport& report) {
  ComplianceReport out;
  for (const auto& p : result.ports) {
    const PortBound* b = report.find_port(p.link_id);
    if (!b) throw ModelError("simulated port " + p.link_id + " is missing from the analysis");
    out.entries.push_back({p.link_id, "port_delay", p.max_delay, b->delay_bound});
    out.entries.push_back({p.link_id, "port_backlog", p.max_backlog, b->storage_bound});
  }
  for (const auto& f : result.flows) {
    const PathLatency* b = report.find_path(f.flow_id);
    if (!b) throw ModelError("simulated flow " + f.flow_id + " is missing from the analysis");
    if (f.delivered > 0) out.entries.push_back({f.flow_id, "flow_delay", f.max_delay, b->latency});
  }
  return out;
}

}  // namespace ivnet
