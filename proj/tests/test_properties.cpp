// Randomised feed-forward networks: small-flow never exceeds exact, and
// larger source envelopes never shrink a burst or a bound.
#include <doctest.h>

#include "helpers.hpp"
#include "ivnet/propagate.hpp"
#include "properties.hpp"

using namespace ivnet;

TEST_CASE("random topologies are valid") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i) {
    const auto rc = ivnet::testing::random_case(rng);
    CHECK(validate_topology(rc.topology).valid());
    CHECK_NOTHROW(rc.groups.check_covers(rc.topology));
  }
}

TEST_CASE("mode dominance on random topologies") {
  const auto outcome = ivnet::testing::dominance_suite(2024, 200);
  CHECK(outcome.cases == 200);
  CHECK(outcome.failures.empty());
}

TEST_CASE("monotonicity on random topologies") {
  const auto outcome = ivnet::testing::monotonicity_suite(2025, 200);
  CHECK(outcome.cases == 200);
  CHECK(outcome.checked > 0);
  CHECK(outcome.failures.empty());
}

TEST_CASE("the generator is deterministic per seed") {
  std::mt19937_64 a(9), b(9);
  for (int i = 0; i < 10; ++i) CHECK(ivnet::testing::random_case(a).topology == ivnet::testing::random_case(b).topology);
}
