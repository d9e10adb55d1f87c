#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "ivnet/calculus.hpp"

using namespace ivnet;
using ivnet::testing::gbps;
using ivnet::testing::mbps;
using ivnet::testing::usec;

TEST_CASE("superposition adds bursts and rates") {
  const FlowType camera{12000, gbps(24, 10)};
  const FlowType sensor{512, mbps(2)};
  const FlowType sum = superpose(camera, sensor);
  CHECK(sum.burst == 12512);
  CHECK(sum.rate == Rational(2402) * 1'000'000);
  CHECK(superpose(sum, FlowType{0, 0}) == sum);
  CHECK(superpose(camera, sensor) == superpose(sensor, camera));
}

TEST_CASE("output burst grows by the competing burst times the rate share") {
  // 512 + 12000 * (2M / 1G) = 536
  const QueueInput q{{512, mbps(2)}, {12000, mbps(100)}, LineRate(gbps(1)), "q"};
  CHECK(output_burst(q) == 536);
  // No competition: the burst passes unchanged.
  CHECK(output_burst({{512, mbps(2)}, {0, 0}, LineRate(gbps(1)), "q"}) == 512);
}

TEST_CASE("overloaded queues are rejected") {
  const QueueInput full{{512, mbps(600)}, {12000, mbps(400)}, LineRate(gbps(1)), "busy"};
  CHECK_THROWS_AS(output_burst(full), StabilityError);
  try {
    output_burst(full);
  } catch (const StabilityError& e) {
    CHECK(std::string(e.what()).find("busy") != std::string::npos);
  }
}

TEST_CASE("delay and storage bounds") {
  CHECK(queue_delay_bound(130000, LineRate(gbps(10))) == usec(13));
  const std::vector<Bits> bursts{Bits(512), Bits(12000), Bits(88)};
  CHECK(queue_storage_bound(bursts) == 12600);
  CHECK(queue_storage_bound({}) == 0);
  CHECK(small_flow_output_burst({777, mbps(3)}) == 777);
}

TEST_CASE("smallness threshold is inclusive") {
  const LineRate r(gbps(1));
  CHECK(is_small({512, mbps(10)}, r));
  CHECK_FALSE(is_small({512, mbps(10) + 1}, r));
  CHECK(is_small({512, mbps(50)}, r, make_rational(5, 100)));
}

TEST_CASE("single switch with spaced inputs") {
  const auto d = single_switch_delay_bound(10, 512, LineRate(gbps(1)), usec(250));
  REQUIRE(d.has_value());
  CHECK(*d == make_rational(512, 100'000'000));  // 5.12 us
  // P*B/R must stay strictly below the spacing.
  CHECK_FALSE(single_switch_delay_bound(10, 512, LineRate(gbps(1)), make_rational(512, 100'000'000)).has_value());
}

TEST_CASE("spaced arrival storage") {
  const std::vector<SpacedInput> ok{{12000, 12000, LineRate(gbps(10))}, {12000, 512, LineRate(gbps(1))}};
  // Sum 24000 / 10G = 2.4 us against min(1.2 us, 0.512 us): fails.
  CHECK_FALSE(spaced_arrival_storage(ok, LineRate(gbps(10))).has_value());
  const std::vector<SpacedInput> slow{{512, 512, LineRate(mbps(10))}, {512, 512, LineRate(mbps(10))}};
  const auto s = spaced_arrival_storage(slow, LineRate(gbps(1)));
  REQUIRE(s.has_value());
  CHECK(*s == 1024);
}
