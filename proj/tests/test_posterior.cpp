#include "bv/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "quadrature.hpp"

using namespace bv;

namespace {

constexpr double kShapeGrid[] = {0.5, 1.0, 2.0, 5.0, 30.0, 500.0};
constexpr double kArgumentGrid[] = {0.01, 0.1, 0.5, 0.9, 0.99};

}  // namespace

TEST_SUITE("posterior") {
  TEST_CASE("conjugate update increments one shape") {
    const BetaPosterior prior;
    const BetaPosterior after_success = update(prior, true);
    CHECK(after_success.a == 2.0);
    CHECK(after_success.b == 1.0);
    const BetaPosterior after_failure = update(prior, false);
    CHECK(after_failure.a == 1.0);
    CHECK(after_failure.b == 2.0);
  }

  TEST_CASE("ten observations with two failures yield Beta(3, 9)") {
    // Belief over the failure probability: a counts failed moves.
    BetaPosterior belief;
    for (int i = 0; i < 2; ++i) belief = update(belief, true);
    for (int i = 0; i < 8; ++i) belief = update(belief, false);
    CHECK(belief.a == 3.0);
    CHECK(belief.b == 9.0);
    CHECK(belief.mean() == doctest::Approx(0.25));
  }

  TEST_CASE("sequential updates equal direct construction") {
    BetaPosterior folded;
    for (const bool outcome : {true, true, false, true, false}) {
      folded = update(folded, outcome);
    }
    CHECK(folded == BetaPosterior(4.0, 3.0));
  }

  TEST_CASE("conjugacy fold equivalence over random sequences") {
    RngStream rng(101);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::uint64_t length = rng.next_below(60);
      BetaPosterior folded;
      std::uint64_t successes = 0;
      for (std::uint64_t i = 0; i < length; ++i) {
        const bool outcome = rng.next_bernoulli(0.5);
        folded = update(folded, outcome);
        if (outcome) ++successes;
      }
      CHECK(folded == BetaPosterior(1.0 + static_cast<double>(successes),
                                    1.0 + static_cast<double>(length - successes)));
    }
  }

  TEST_CASE("invalid shapes are rejected") {
    CHECK_THROWS_AS(BetaPosterior(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BetaPosterior(1.0, -2.0), std::invalid_argument);
  }

  TEST_CASE("incomplete beta uniform identity") {
    CHECK(regularized_incomplete_beta(1.0, 1.0, 0.37) ==
          doctest::Approx(0.37).epsilon(1e-12));
  }

  TEST_CASE("incomplete beta symmetry at one half") {
    CHECK(regularized_incomplete_beta(7.0, 7.0, 0.5) ==
          doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("incomplete beta spot value against quadrature") {
    // Closed form: integral of 12 t (1 - t)^2 over [0, 0.3] is exactly 0.3483.
    const double oracle = testing::beta_cdf_by_quadrature(2.0, 3.0, 0.3);
    CHECK(oracle == doctest::Approx(0.3483).epsilon(1e-10));
    CHECK(regularized_incomplete_beta(2.0, 3.0, 0.3) ==
          doctest::Approx(0.3483).epsilon(1e-10));
  }

  TEST_CASE("incomplete beta endpoints and domain errors") {
    CHECK(regularized_incomplete_beta(3.0, 4.0, 0.0) == 0.0);
    CHECK(regularized_incomplete_beta(3.0, 4.0, 1.0) == 1.0);
    CHECK_THROWS_AS(regularized_incomplete_beta(3.0, 4.0, -0.1),
                    std::domain_error);
    CHECK_THROWS_AS(regularized_incomplete_beta(3.0, 4.0, 1.1),
                    std::domain_error);
    CHECK_THROWS_AS(regularized_incomplete_beta(0.0, 4.0, 0.5),
                    std::domain_error);
    CHECK_THROWS_AS(regularized_incomplete_beta(3.0, -1.0, 0.5),
                    std::domain_error);
  }

  TEST_CASE("incomplete beta agrees with the quadrature oracle on the grid") {
    for (const double a : kShapeGrid) {
      for (const double b : kShapeGrid) {
        for (const double x : kArgumentGrid) {
          const double expected = testing::beta_cdf_by_quadrature(a, b, x);
          const double actual = regularized_incomplete_beta(a, b, x);
          INFO("a=", a, " b=", b, " x=", x);
          CHECK(std::fabs(actual - expected) <= 1e-9);
        }
      }
    }
  }

  TEST_CASE("incomplete beta reflection identity") {
    for (const double a : kShapeGrid) {
      for (const double b : kShapeGrid) {
        for (const double x : kArgumentGrid) {
          const double direct = regularized_incomplete_beta(a, b, x);
          const double reflected =
              1.0 - regularized_incomplete_beta(b, a, 1.0 - x);
          INFO("a=", a, " b=", b, " x=", x);
          CHECK(std::fabs(direct - reflected) <= 1e-12);
        }
      }
    }
  }

  TEST_CASE("incomplete beta is monotone in x") {
    RngStream rng(202);
    for (int trial = 0; trial < 200; ++trial) {
      const double a = 0.2 + 40.0 * rng.next_double();
      const double b = 0.2 + 40.0 * rng.next_double();
      double previous = 0.0;
      for (int i = 0; i <= 50; ++i) {
        const double x = static_cast<double>(i) / 50.0;
        const double value = regularized_incomplete_beta(a, b, x);
        CHECK(value >= previous);
        previous = value;
      }
    }
  }

  TEST_CASE("mass above uniform prior") {
    CHECK(mass_above(BetaPosterior(1.0, 1.0), 0.9) ==
          doctest::Approx(0.1).epsilon(1e-12));
  }

  TEST_CASE("mass above Beta(2, 1)") {
    CHECK(mass_above(BetaPosterior(2.0, 1.0), 0.5) ==
          doctest::Approx(0.75).epsilon(1e-12));
  }

  TEST_CASE("mass above Beta(29, 1) closed form") {
    // CDF of Beta(a, 1) is x^a.
    const double expected = 1.0 - std::pow(0.9, 29.0);
    CHECK(expected == doctest::Approx(0.9528985).epsilon(1e-6));
    CHECK(mass_above(BetaPosterior(29.0, 1.0), 0.9) ==
          doctest::Approx(expected).epsilon(1e-12));
    const double oracle = 1.0 - testing::beta_cdf_by_quadrature(29.0, 1.0, 0.9);
    CHECK(mass_above(BetaPosterior(29.0, 1.0), 0.9) ==
          doctest::Approx(oracle).epsilon(1e-9));
  }

  TEST_CASE("mass above endpoints") {
    const BetaPosterior post(3.0, 5.0);
    CHECK(mass_above(post, 0.0) == 1.0);
    CHECK(mass_above(post, 1.0) == 0.0);
  }

  TEST_CASE("mass above and the CDF are complementary") {
    RngStream rng(303);
    for (int trial = 0; trial < 1000; ++trial) {
      const double a = 0.3 + 100.0 * rng.next_double();
      const double b = 0.3 + 100.0 * rng.next_double();
      const double t = rng.next_double();
      const BetaPosterior post(a, b);
      const double total =
          mass_above(post, t) + regularized_incomplete_beta(a, b, t);
      CHECK(std::fabs(total - 1.0) <= 1e-12);
    }
  }

  TEST_CASE("uniform draws pass a Kolmogorov-Smirnov check") {
    RngStream rng(404);
    const BetaPosterior uniform;
    const std::size_t n = 10000;
    std::vector<double> draws;
    draws.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      draws.push_back(sample(uniform, rng).theta);
    }
    std::sort(draws.begin(), draws.end());
    double statistic = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double cdf = draws[i];  // Beta(1, 1) CDF is the identity
      const double upper = static_cast<double>(i + 1) / n - cdf;
      const double lower = cdf - static_cast<double>(i) / n;
      statistic = std::max({statistic, upper, lower});
    }
    // Asymptotic 1% critical value: 1.6276 / sqrt(n).
    CHECK(statistic < 1.6276 / std::sqrt(static_cast<double>(n)));
  }

  TEST_CASE("sample mean matches Beta(3, 9) expectation") {
    RngStream rng(505);
    const BetaPosterior post(3.0, 9.0);
    const std::size_t n = 100000;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += sample(post, rng).theta;
    CHECK(sum / n == doctest::Approx(0.25).epsilon(0.02));
    CHECK(std::fabs(sum / n - 0.25) <= 0.005);
  }

  TEST_CASE("sampling is deterministic per seed") {
    RngStream first(42);
    RngStream second(42);
    const BetaPosterior post(2.5, 7.0);
    for (int i = 0; i < 100; ++i) {
      CHECK(sample(post, first).theta == sample(post, second).theta);
    }
  }

  TEST_CASE("draw histogram matches the density (chi-square, 1% level)") {
    // 20 equiprobable bins from oracle quantiles; critical value for 19
    // degrees of freedom at the 1% level is 36.191.
    const double a = 3.0;
    const double b = 9.0;
    constexpr int kBins = 20;
    std::vector<double> edges;
    for (int i = 1; i < kBins; ++i) {
      const double target = static_cast<double>(i) / kBins;
      double lo = 0.0;
      double hi = 1.0;
      for (int iter = 0; iter < 80; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (testing::beta_cdf_by_quadrature(a, b, mid) < target) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      edges.push_back(0.5 * (lo + hi));
    }
    RngStream rng(606);
    const BetaPosterior post(a, b);
    const std::size_t n = 100000;
    std::vector<std::size_t> counts(kBins, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const double theta = sample(post, rng).theta;
      const std::size_t bin =
          std::upper_bound(edges.begin(), edges.end(), theta) - edges.begin();
      ++counts[bin];
    }
    const double expected = static_cast<double>(n) / kBins;
    double chi_square = 0.0;
    for (const std::size_t count : counts) {
      const double delta = static_cast<double>(count) - expected;
      chi_square += delta * delta / expected;
    }
    CHECK(chi_square < 36.191);
  }
}
