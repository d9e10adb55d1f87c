// Checking that slow flows can ride a fast network without reshaping.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "ivnet/calculus.hpp"
#include "ivnet/model.hpp"

namespace ivnet {

struct SlowLinkLoad {
  std::int64_t max_flows = 0;  // N_i
  BitsPerSecond max_rate;      // b_i, per slow flow
  BitsPerSecond spare;         // bandwidth left after the fast flows
};

struct SlowOverlay {
  Bits max_packet;  // B
  std::map<std::string, SlowLinkLoad, std::less<>> links;
};

struct FreeRiderBudgets {
  Seconds max_added_delay;
  Bits max_added_memory;
};

struct FreeRiderLink {
  std::string link_id;
  BitsPerSecond line_rate;
  std::int64_t max_flows = 0;
  Seconds added_delay;  // N_i * B / R_i
  Bits added_memory;    // N_i * B
  bool delay_ok = false;
  bool memory_ok = false;
  bool bandwidth_ok = false;  // spare >= N_i * b_i
  bool smallness_ok = false;  // b_i / R_i <= threshold
  bool pass() const { return delay_ok && memory_ok && bandwidth_ok && smallness_ok; }
};

struct FreeRiderReport {
  std::vector<FreeRiderLink> links;  // sorted by link id
  bool pass() const;
  const FreeRiderLink& link(std::string_view id) const;
};

/// Per link: added delay and memory against the budgets, spare bandwidth,
/// and smallness of b_i on R_i. Throws ModelError for overlay links missing
/// from the topology, negative counts or rates, or a non-positive B.
FreeRiderReport check_free_rider(const Topology& topology, const SlowOverlay& overlay,
                                 const FreeRiderBudgets& budgets,
                                 const Rational& threshold = kDefaultSmallThreshold);

/// Overlay derived from routed flows: flows accepted by `is_slow` are counted
/// per link; spare is line rate minus the sustained rate of the other flows.
/// Every link carrying a slow flow gets an entry.
SlowOverlay overlay_from_topology(const Topology& topology,
                                  const std::function<bool(const FlowSpec&)>& is_slow);

/// Links carrying a flow accepted by `is_slow` that the overlay omits.
std::vector<std::string> uncovered_links(const Topology& topology, const SlowOverlay& overlay,
                                         const std::function<bool(const FlowSpec&)>& is_slow);

/// Per-link pass/fail table.
std::string render_free_rider(const FreeRiderReport& report);

}  // namespace ivnet
