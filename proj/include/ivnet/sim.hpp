// Packet-level FIFO simulator used as an empirical check of the analytic bounds.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ivnet/model.hpp"
#include "ivnet/propagate.hpp"

namespace ivnet {

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One shaped member flow. A conforming source emits every min_spacing; a
/// misbehaving one uses a shorter emit_spacing and its policer drops the
/// packets that come too early.
struct ShapedSource {
  std::string flow_id;
  std::int64_t member = 0;
  Bits packet_bits;
  Seconds min_spacing;
  Seconds start_offset;
  std::optional<Seconds> emit_spacing;       // defaults to min_spacing
  std::optional<std::int64_t> packet_budget;  // unbounded when empty
};

/// One source per member of every flow spec: spacing packet_bits / per-flow
/// rate, all offsets zero (adversarial alignment).
std::vector<ShapedSource> default_sources(const Topology& topology);

/// Offsets drawn uniformly from {k * spacing / 1024 : 0 <= k < 1024}.
void randomize_offsets(std::vector<ShapedSource>& sources, std::uint64_t seed);

struct SimOptions {
  Seconds horizon = Rational(1, 10);
  std::int64_t max_events = 100'000'000;
  std::ostream* trace = nullptr;  // "time_ns, port_id, event_kind, packet_id, backlog_bits"
};

struct PortStats {
  std::string link_id;
  Seconds max_delay;  // arrival to end of transmission
  Bits max_backlog;   // bits queued right after an arrival
  std::int64_t packets = 0;
};

struct FlowStats {
  std::string flow_id;
  Seconds max_delay;  // emission to delivery over the whole route
  std::int64_t delivered = 0;
  std::int64_t dropped = 0;
};

struct SimResult {
  Seconds horizon;
  std::vector<PortStats> ports;  // sorted by link id
  std::vector<FlowStats> flows;  // sorted by flow id
  std::vector<std::string> drop_log;
  std::int64_t events = 0;
  bool steady = true;  // no maximum grew during the last 20% of the horizon

  const PortStats* port(std::string_view id) const;
  const FlowStats* flow(std::string_view id) const;
};

/// Measures every packet emitted before the horizon, run to delivery. Sources
/// keep emitting for another tenth of the horizon so measured packets never
/// see them switch off; those packets are simulated but not measured.
/// Simultaneous arrivals at a port are served by ascending input link id,
/// then packet id (source packets come before forwarded ones).
/// Throws ModelError for sources inconsistent with the topology and
/// SimulationError when the event budget or the time grid overflows.
SimResult run(const Topology& topology, const std::vector<ShapedSource>& sources,
              const SimOptions& options = {});

struct ComplianceEntry {
  std::string subject;
  std::string kind;  // port_delay, port_backlog, flow_delay
  Rational measured;
  Rational bound;
  Rational slack() const { return bound - measured; }
  bool ok() const { return measured <= bound; }
};

struct ComplianceReport {
  std::vector<ComplianceEntry> entries;
  bool pass() const;
  std::vector<const ComplianceEntry*> violations() const;
  Rational min_slack() const;  // 0 when empty
};

/// Exact comparison of every measured maximum with its bound. Throws
/// ModelError when the result names a port or flow the report lacks.
ComplianceReport compare_with_bounds(const SimResult& result, const AnalysisReport& report);

}  // namespace ivnet
