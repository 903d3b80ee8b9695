#include "bv/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace bv;

TEST_SUITE("rng") {
  TEST_CASE("same seed replays the same stream") {
    RngStream a(7);
    RngStream b(7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  }

  TEST_CASE("derived streams depend only on seed and key") {
    RngStream parent(99);
    parent.next_u64();  // advancing the parent must not affect children
    RngStream child_a = parent.derive(3);
    RngStream child_b = RngStream(99).derive(3);
    for (int i = 0; i < 20; ++i) CHECK(child_a.next_u64() == child_b.next_u64());
    RngStream sibling = parent.derive(4);
    CHECK(sibling.seed() != child_b.seed());
    CHECK(parent.derive(3).seed() != 99);
  }

  TEST_CASE("next_double stays in the unit interval") {
    RngStream rng(1);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const double u = rng.next_double();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      sum += u;
    }
    CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
  }

  TEST_CASE("next_below covers the range without bias") {
    RngStream rng(2);
    int counts[4] = {0, 0, 0, 0};
    for (int i = 0; i < 40000; ++i) {
      const std::uint64_t v = rng.next_below(4);
      REQUIRE(v < 4);
      ++counts[v];
    }
    for (const int c : counts) {
      CHECK(std::fabs(c - 10000.0) < 400.0);  // ~4.6 sigma
    }
    CHECK_THROWS_AS(rng.next_below(0), std::invalid_argument);
  }

  TEST_CASE("normal draws have the right first two moments") {
    RngStream rng(3);
    const int n = 100000;
    double sum = 0.0;
    double sum_squares = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.next_normal();
      sum += x;
      sum_squares += x * x;
    }
    CHECK(sum / n == doctest::Approx(0.0).epsilon(1).scale(0.012));
    CHECK(std::fabs(sum / n) < 0.012);
    CHECK(sum_squares / n == doctest::Approx(1.0).epsilon(0.02));
  }

  TEST_CASE("gamma draws match mean and variance") {
    RngStream rng(4);
    for (const double shape : {0.4, 1.0, 2.5, 9.0}) {
      const int n = 100000;
      double sum = 0.0;
      double sum_squares = 0.0;
      for (int i = 0; i < n; ++i) {
        const double x = rng.next_gamma(shape);
        sum += x;
        sum_squares += x * x;
      }
      const double mean = sum / n;
      const double variance = sum_squares / n - mean * mean;
      CHECK(mean == doctest::Approx(shape).epsilon(0.03));
      CHECK(variance == doctest::Approx(shape).epsilon(0.08));
    }
    CHECK_THROWS_AS(rng.next_gamma(0.0), std::invalid_argument);
  }
}
