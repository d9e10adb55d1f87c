#include "ivnet/calculus.hpp"

namespace ivnet {

FlowType superpose(const FlowType& x, const FlowType& y) {
  return FlowType{x.burst + y.burst, x.rate + y.rate};
}

Bits output_burst(const QueueInput& q) {
  const BitsPerSecond load = q.target.rate + q.cross.rate;
  if (load >= q.rate.bps()) {
    throw StabilityError("queue '" + q.queue_id + "' is unstable: sustained " + to_decimal(load, 0) +
                         " b/s >= service rate " + to_decimal(q.rate.bps(), 0) + " b/s");
  }
  Bits out = q.target.burst + q.cross.burst * q.target.rate / q.rate.bps();
  out.canonicalize();
  return out;
}

Seconds queue_delay_bound(const Bits& total_burst, const LineRate& rate) {
  Seconds out = total_burst / rate.bps();
  out.canonicalize();
  return out;
}

Bits queue_storage_bound(std::span<const Bits> bursts) {
  Bits total = 0;
  for (const auto& b : bursts) total += b;
  return total;
}

Bits small_flow_output_burst(const FlowType& target) { return target.burst; }

bool is_small(const FlowType& target, const LineRate& rate, const Rational& threshold) {
  return target.rate / rate.bps() <= threshold;
}

std::optional<Seconds> single_switch_delay_bound(std::int64_t ports, const Bits& packet_bits,
                                                 const LineRate& rate, const Seconds& spacing) {
  Seconds bound = packet_bits * ports / rate.bps();
  bound.canonicalize();
  if (bound < spacing) return bound;
  return std::nullopt;
}

std::optional<Bits> spaced_arrival_storage(std::span<const SpacedInput> inputs, const LineRate& rate) {
  if (inputs.empty()) return std::nullopt;
  Bits total = 0;
  Seconds gap = inputs.front().min_packet / inputs.front().link_rate.bps();
  for (const auto& in : inputs) {
    total += in.max_packet;
    Seconds g = in.min_packet / in.link_rate.bps();
    if (g < gap) gap = g;
  }
  // Any window of length `gap` sees at most one packet per input, i.e. at
  // most `total` bits, and the queue serves `total` bits within `gap`; a busy
  // period therefore never holds more than `total` bits.
  if (total / rate.bps() <= gap) return total;
  return std::nullopt;
}

}  // namespace ivnet
