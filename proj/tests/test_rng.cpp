#include "gammalab/rng.hpp"

#include "doctest.h"

using gammalab::SplitMix64;

TEST_SUITE("rng") {

TEST_CASE("same seed gives the same stream") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge") {
  SplitMix64 a(1), b(2);
  bool any_diff = false;
  for (int i = 0; i < 16; ++i) any_diff |= (a.next_u64() != b.next_u64());
  REQUIRE(any_diff);
}

TEST_CASE("unit draws live in [0,1) and are roughly centered") {
  SplitMix64 rng(7);
  double sum = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  const double mean = sum / n;
  REQUIRE(mean > 0.45);
  REQUIRE(mean < 0.55);
}

TEST_CASE("uniform respects bounds") {
  SplitMix64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.next_uniform(-0.25, 0.25);
    REQUIRE(x >= -0.25);
    REQUIRE(x < 0.25);
  }
}

}  // TEST_SUITE
