#include "ivnet/freerider.hpp"

#include <set>
#include <sstream>

namespace ivnet {

bool FreeRiderReport::pass() const {
  for (const auto& l : links)
    if (!l.pass()) return false;
  return true;
}

const FreeRiderLink& FreeRiderReport::link(std::string_view id) const {
  for (const auto& l : links)
    if (l.link_id == id) return l;
  throw ModelError("link " + std::string(id) + " is not in the free-rider report");
}

FreeRiderReport check_free_rider(const Topology& topology, const SlowOverlay& overlay,
                                 const FreeRiderBudgets& budgets, const Rational& threshold) {
  if (overlay.max_packet <= 0) throw ModelError("slow packet size B must be positive");
  FreeRiderReport report;
  for (const auto& [id, load] : overlay.links) {
    const Link* link = topology.find_link(id);
    if (!link) throw ModelError("overlay names unknown link " + id);
    if (load.max_flows < 0 || load.max_rate < 0 || load.spare < 0)
      throw ModelError("overlay entry for link " + id + " has a negative value");
    FreeRiderLink r;
    r.link_id = id;
    r.line_rate = link->rate.bps();
    r.max_flows = load.max_flows;
    r.added_memory = overlay.max_packet * load.max_flows;
    r.added_delay = r.added_memory / r.line_rate;
    r.delay_ok = r.added_delay <= budgets.max_added_delay;
    r.memory_ok = r.added_memory <= budgets.max_added_memory;
    r.bandwidth_ok = load.spare >= load.max_rate * load.max_flows;
    r.smallness_ok = is_small(FlowType{overlay.max_packet, load.max_rate}, link->rate, threshold);
    report.links.push_back(std::move(r));
  }
  return report;
}

SlowOverlay overlay_from_topology(const Topology& topology,
                                  const std::function<bool(const FlowSpec&)>& is_slow) {
  SlowOverlay overlay;
  overlay.max_packet = 0;
  std::map<std::string, BitsPerSecond> fast_load;
  for (const auto& [id, flow] : topology.flows()) {
    const bool slow = is_slow(flow);
    if (slow && flow.packet_bits > overlay.max_packet) overlay.max_packet = flow.packet_bits;
    for (const auto& l : flow.route) {
      if (slow) {
        auto& e = overlay.links[l];
        e.max_flows += flow.count;
        if (flow.per_flow.rate > e.max_rate) e.max_rate = flow.per_flow.rate;
      } else {
        fast_load[l] += flow.aggregate_rate();
      }
    }
  }
  for (auto& [l, e] : overlay.links) e.spare = topology.link(l).rate.bps() - fast_load[l];
  return overlay;
}

std::vector<std::string> uncovered_links(const Topology& topology, const SlowOverlay& overlay,
                                         const std::function<bool(const FlowSpec&)>& is_slow) {
  std::set<std::string> missing;
  for (const auto& [id, flow] : topology.flows())
    if (is_slow(flow))
      for (const auto& l : flow.route)
        if (!overlay.links.count(l)) missing.insert(l);
  return {missing.begin(), missing.end()};
}

std::string render_free_rider(const FreeRiderReport& report) {
  std::ostringstream os;
  auto mark = [](bool ok) { return ok ? "ok" : "FAIL"; };
  for (const auto& l : report.links) {
    os << l.link_id << "  R=" << to_significant(l.line_rate / 1'000'000'000, 3) << " Gb/s"
       << "  N=" << l.max_flows << "  +delay=" << format_seconds(l.added_delay)
       << "  +memory=" << format_bits(l.added_memory) << "  delay:" << mark(l.delay_ok)
       << " memory:" << mark(l.memory_ok) << " bandwidth:" << mark(l.bandwidth_ok)
       << " small:" << mark(l.smallness_ok) << "  " << (l.pass() ? "PASS" : "FAIL") << '\n';
  }
  os << "overall: " << (report.pass() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace ivnet
