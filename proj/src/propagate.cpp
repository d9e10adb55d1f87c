#include "ivnet/propagate.hpp"

#include <algorithm>
#include <set>

namespace ivnet {

std::string_view to_string(Mode mode) { return mode == Mode::exact ? "exact" : "small"; }

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::exact;
  if (text == "small" || text == "small_flow" || text == "small-flow") return Mode::small_flow;
  throw ModelError("unknown mode '" + std::string(text) + "' (expected exact or small)");
}

Partition Partition::singletons(const Topology& topology) {
  Partition p;
  for (const auto& [id, flow] : topology.flows()) p.assign(id, id);
  return p;
}

void Partition::assign(const std::string& group, const std::string& flow_id) {
  if (group.empty()) throw ModelError("empty group name for flow " + flow_id);
  auto [it, inserted] = owner_.emplace(flow_id, group);
  if (!inserted) {
    if (it->second == group) return;
    throw ModelError("flow " + flow_id + " already belongs to group " + it->second);
  }
  groups_[group].push_back(flow_id);
}

const std::string& Partition::group_of(std::string_view flow_id) const {
  auto it = owner_.find(flow_id);
  if (it == owner_.end()) throw ModelError("flow " + std::string(flow_id) + " is not assigned to a group");
  return it->second;
}

void Partition::check_covers(const Topology& topology) const {
  for (const auto& [id, flow] : topology.flows())
    if (!owner_.count(id)) throw ModelError("flow " + id + " is not assigned to a group");
  for (const auto& [flow, group] : owner_)
    if (!topology.find_flow(flow)) throw ModelError("group " + group + " names unknown flow " + flow);
}

const Bits& BurstMap::at(std::string_view group, std::string_view link) const {
  auto it = entries_.find(BurstKey{std::string(group), std::string(link)});
  if (it == entries_.end())
    throw ModelError("no burst for group " + std::string(group) + " on link " + std::string(link));
  return it->second;
}

bool BurstMap::contains(std::string_view group, std::string_view link) const {
  return entries_.count(BurstKey{std::string(group), std::string(link)}) != 0;
}

namespace {

struct Hop {
  const FlowSpec* flow;
  std::size_t position;
};

// Per group at one queue.
struct GroupAtQueue {
  BitsPerSecond rate = 0;
  Bits source = 0;
  std::set<std::string> inputs;
};

struct InputPackets {
  Bits max_packet = 0;
  Bits min_packet = 0;
  bool seen = false;
};

}  // namespace

BurstMap propagate_bursts(const Topology& topology, const Partition& partition, Mode mode,
                          const Rational& threshold) {
  require_valid(topology);
  partition.check_covers(topology);
  if (threshold < 0) throw ModelError("small-flow threshold must be non-negative");

  std::map<std::string, std::vector<Hop>, std::less<>> hops;
  for (const auto& [id, flow] : topology.flows())
    for (std::size_t i = 0; i < flow.route.size(); ++i) hops[flow.route[i]].push_back({&flow, i});

  BurstMap out(mode, partition, threshold);
  for (const auto& link_id : topological_queue_order(topology)) {
    auto hit = hops.find(link_id);
    if (hit == hops.end()) continue;
    const Link& link = topology.link(link_id);

    std::map<std::string, GroupAtQueue> groups;
    std::map<std::string, InputPackets> inputs;
    bool has_source = false;
    BitsPerSecond sustained = 0;
    for (const auto& hop : hit->second) {
      auto& g = groups[partition.group_of(hop.flow->id)];
      g.rate += hop.flow->aggregate_rate();
      sustained += hop.flow->aggregate_rate();
      if (hop.position == 0) {
        g.source += hop.flow->source_burst();
        has_source = true;
      } else {
        const auto& prev = hop.flow->route[hop.position - 1];
        g.inputs.insert(prev);
        auto& in = inputs[prev];
        if (!in.seen || hop.flow->packet_bits > in.max_packet) in.max_packet = hop.flow->packet_bits;
        if (!in.seen || hop.flow->packet_bits < in.min_packet) in.min_packet = hop.flow->packet_bits;
        in.seen = true;
      }
    }
    if (sustained >= link.rate.bps())
      throw StabilityError("queue " + link_id + " is overloaded");

    std::map<std::string, Bits> burst_in;
    Bits total = 0;
    for (const auto& [group, g] : groups) {
      Bits b = g.source;
      for (const auto& j : g.inputs) b += out.at(group, j);
      total += b;
      burst_in[group] = b;
    }

    // Spaced arrivals: input j delivers whole packets no closer than
    // min_j / R_j apart. If the port can send one largest packet from every
    // input within that gap (sum L_j / R <= min_j / R_j), then whenever a
    // packet from j arrives the previous one from j has already left, so the
    // queue never holds more than one packet per input: backlog <= sum L_j.
    QueueSummary summary{total, total, false, sustained};
    if (!has_source && !inputs.empty()) {
      std::vector<SpacedInput> spaced;
      for (const auto& [j, in] : inputs)
        spaced.push_back({in.max_packet, in.min_packet, topology.link(j).rate});
      if (auto s = spaced_arrival_storage(spaced, link.rate); s && *s < total) {
        summary.storage = *s;
        summary.spaced = true;
      }
    }

    for (const auto& [group, g] : groups) {
      const Bits& b = burst_in[group];
      const FlowType target{b, g.rate};
      Bits next;
      if (g.inputs.empty()) {
        next = b;  // shaped at its own bridge: the source envelope holds on the first link
      } else if (mode == Mode::small_flow && is_small(target, link.rate, threshold)) {
        next = small_flow_output_burst(target);
      } else {
        Bits cross = total - b;
        if (summary.storage < cross) cross = summary.storage;
        next = output_burst(QueueInput{target, FlowType{cross, sustained - g.rate}, link.rate, link_id});
      }
      out.set(BurstKey{group, link_id}, std::move(next));
    }
    out.set_queue(link_id, std::move(summary));
  }
  return out;
}

const PortBound* AnalysisReport::find_port(std::string_view link_id) const {
  auto it = std::lower_bound(port_bounds.begin(), port_bounds.end(), link_id,
                             [](const PortBound& p, std::string_view id) { return p.link_id < id; });
  return it != port_bounds.end() && it->link_id == link_id ? &*it : nullptr;
}

const PortBound& AnalysisReport::port(std::string_view link_id) const {
  if (const auto* p = find_port(link_id)) return *p;
  throw ModelError("no port bound for link " + std::string(link_id));
}

const PathLatency* AnalysisReport::find_path(std::string_view flow_id) const {
  for (const auto& p : path_latencies)
    if (p.flow_id == flow_id) return &p;
  return nullptr;
}

AnalysisReport port_report(const Topology& topology, const BurstMap& bursts) {
  AnalysisReport report;
  report.mode = bursts.mode();
  report.notes.push_back("propagation discipline: per-queue");
  std::vector<std::string> spaced;
  for (const auto& [link_id, q] : bursts.queues()) {
    const Link& link = topology.link(link_id);
    report.port_bounds.push_back({link_id, queue_delay_bound(q.storage, link.rate), q.storage});
    const Node* from = topology.find_node(link.from);
    if (from && from->kind == NodeKind::switch_node) {
      auto [it, inserted] = report.switch_memory.emplace(from->id, q.storage);
      if (!inserted) it->second += q.storage;
    }
    if (q.spaced) spaced.push_back(link_id);
  }
  if (!spaced.empty()) {
    std::string note = "spaced-arrival storage bound applied at " + std::to_string(spaced.size()) + " port(s):";
    for (const auto& l : spaced) note += " " + l;
    report.notes.push_back(std::move(note));
  }
  for (const auto& [id, flow] : topology.flows()) {
    report.path_latencies.push_back(
        {bursts.partition().group_of(id), id, flow.route, end_to_end_bound(report, flow.route)});
  }
  return report;
}

Seconds end_to_end_bound(const AnalysisReport& report, const std::vector<std::string>& route) {
  Seconds total = 0;
  for (const auto& l : route) total += report.port(l).delay_bound;
  return total;
}

AnalysisReport analyze(const Topology& topology, const Partition& partition, Mode mode,
                       const Rational& threshold) {
  return port_report(topology, propagate_bursts(topology, partition, mode, threshold));
}

}  // namespace ivnet
