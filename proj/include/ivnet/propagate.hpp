// Network-wide burst propagation and per-port / per-switch bounds.
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ivnet/calculus.hpp"
#include "ivnet/model.hpp"

namespace ivnet {

enum class Mode { exact, small_flow };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Assignment of every flow spec to exactly one analysis group.
class Partition {
 public:
  /// One group per flow spec, named after the flow.
  static Partition singletons(const Topology& topology);

  /// Throws ModelError if the flow already belongs to another group.
  void assign(const std::string& group, const std::string& flow_id);

  const std::map<std::string, std::vector<std::string>, std::less<>>& groups() const { return groups_; }
  /// Throws ModelError for unassigned flows.
  const std::string& group_of(std::string_view flow_id) const;
  bool contains_flow(std::string_view flow_id) const { return owner_.count(std::string(flow_id)) != 0; }

  /// Throws ModelError unless every flow of `topology` is assigned and no
  /// group names an unknown flow.
  void check_covers(const Topology& topology) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> groups_;
  std::map<std::string, std::string, std::less<>> owner_;
};

struct BurstKey {
  std::string group;
  std::string link;
  friend auto operator<=>(const BurstKey&, const BurstKey&) = default;
};

/// Per-queue totals recorded while propagating.
struct QueueSummary {
  Bits total_input;     // sum of group bursts entering the queue
  Bits storage;         // backlog bound (total_input, or the spaced-arrival bound)
  bool spaced = false;  // spaced-arrival bound was tighter
  BitsPerSecond sustained;
};

/// beta(G, l): burst of group G as it leaves link l.
class BurstMap {
 public:
  BurstMap(Mode mode, Partition partition, Rational threshold)
      : mode_(mode), partition_(std::move(partition)), threshold_(std::move(threshold)) {}

  Mode mode() const { return mode_; }
  const Partition& partition() const { return partition_; }
  const Rational& threshold() const { return threshold_; }

  const std::map<BurstKey, Bits>& entries() const { return entries_; }
  const std::map<std::string, QueueSummary, std::less<>>& queues() const { return queues_; }

  /// Throws ModelError when the group has no entry on that link.
  const Bits& at(std::string_view group, std::string_view link) const;
  bool contains(std::string_view group, std::string_view link) const;

  void set(BurstKey key, Bits burst) { entries_[std::move(key)] = std::move(burst); }
  void set_queue(const std::string& link, QueueSummary summary) { queues_[link] = std::move(summary); }

 private:
  Mode mode_;
  Partition partition_;
  Rational threshold_;
  std::map<BurstKey, Bits> entries_;
  std::map<std::string, QueueSummary, std::less<>> queues_;
};

/// Visits queues in topological order. A group's burst on its source link is
/// the sum of its members' source bursts. Downstream, each group G leaves a
/// queue with beta_in(G) + min(C, S) * b(G) / R where C sums the input bursts of
/// every other group at the queue and S is the queue's backlog bound; in
/// small-flow mode groups passing is_small keep beta_in(G).
/// Throws ModelError for invalid topologies or partitions, StabilityError for
/// overloaded queues.
BurstMap propagate_bursts(const Topology& topology, const Partition& partition, Mode mode,
                          const Rational& threshold = kDefaultSmallThreshold);

struct PortBound {
  std::string link_id;
  Seconds delay_bound;
  Bits storage_bound;
  friend bool operator==(const PortBound&, const PortBound&) = default;
};

struct PathLatency {
  std::string group;
  std::string flow_id;
  std::vector<std::string> route;
  Seconds latency;
  friend bool operator==(const PathLatency&, const PathLatency&) = default;
};

struct AnalysisReport {
  Mode mode = Mode::exact;
  std::vector<PortBound> port_bounds;         // sorted by link id
  std::map<std::string, Bits> switch_memory;  // switch id -> sum over its output ports
  std::vector<PathLatency> path_latencies;    // sorted by flow id
  std::vector<std::string> notes;

  const PortBound* find_port(std::string_view link_id) const;
  /// Throws ModelError for links absent from the report.
  const PortBound& port(std::string_view link_id) const;
  const PathLatency* find_path(std::string_view flow_id) const;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// Per-port storage/delay, per-switch memory and per-flow path latency.
AnalysisReport port_report(const Topology& topology, const BurstMap& bursts);

/// Sum of the route's per-port delay bounds; throws ModelError for unknown links.
Seconds end_to_end_bound(const AnalysisReport& report, const std::vector<std::string>& route);

/// propagate_bursts followed by port_report.
AnalysisReport analyze(const Topology& topology, const Partition& partition, Mode mode,
                       const Rational& threshold = kDefaultSmallThreshold);

}  // namespace ivnet
