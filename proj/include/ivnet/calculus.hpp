// Flow-type algebra and single-queue bounds for FCFS ports.
#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "ivnet/model.hpp"

namespace ivnet {

/// Raised when the sustained input rate of a queue reaches its service rate.
class StabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The group under analysis and the aggregate of everything else entering
/// the same FCFS queue.
struct QueueInput {
  FlowType target;
  FlowType cross;
  LineRate rate;
  std::string queue_id;  // used in error messages only
};

/// Default ratio below which a flow is treated as small on a link.
inline const Rational kDefaultSmallThreshold = Rational(1, 100);

/// Componentwise sum; (0, 0) is the identity.
FlowType superpose(const FlowType& x, const FlowType& y);

/// Burst of the target as it leaves the queue: A + C * a / R.
/// Throws StabilityError unless target.rate + cross.rate < R.
Bits output_burst(const QueueInput& q);

/// (A + B) / R where `total_burst` covers every flow entering the queue.
Seconds queue_delay_bound(const Bits& total_burst, const LineRate& rate);

/// Sum of the bursts entering the queue.
Bits queue_storage_bound(std::span<const Bits> bursts);

/// Approximation that keeps the burst unchanged.
Bits small_flow_output_burst(const FlowType& target);

/// target.rate / rate <= threshold (inclusive).
bool is_small(const FlowType& target, const LineRate& rate, const Rational& threshold = kDefaultSmallThreshold);

/// P inputs of B-bit packets spaced by at least T sharing one output of rate R:
/// every packet leaves within P*B/R when P*B/R < T. Empty when the hypothesis fails.
std::optional<Seconds> single_switch_delay_bound(std::int64_t ports, const Bits& packet_bits,
                                                 const LineRate& rate, const Seconds& spacing);

/// One input link of a queue, seen at packet granularity.
struct SpacedInput {
  Bits max_packet;  // largest packet on the link that enters the queue
  Bits min_packet;  // smallest packet on the link that enters the queue
  LineRate link_rate;
};

/// Backlog bound for a queue fed only through input links when every link can
/// deliver at most one packet per min_packet/link_rate and the queue drains one
/// packet from each input faster than that: sum(max_packet) / R <= min(min_packet / link_rate).
/// Returns the sum of max packets, or empty when the condition fails.
std::optional<Bits> spaced_arrival_storage(std::span<const SpacedInput> inputs, const LineRate& rate);

}  // namespace ivnet
