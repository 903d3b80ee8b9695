#pragma once

#include "bv/rng.hpp"

namespace bv {

// Beta(a, b) belief over a Bernoulli parameter. The same type carries the
// model uncertainty over the action-failure probability and the running
// satisfaction belief. The uniform prior is Beta(1, 1); after s positive and
// f negative outcomes it is Beta(s + 1, f + 1).
struct BetaPosterior {
  double a = 1.0;
  double b = 1.0;

  BetaPosterior() = default;
  BetaPosterior(double a_, double b_);

  double mean() const { return a / (a + b); }

  friend bool operator==(const BetaPosterior&, const BetaPosterior&) = default;
};

// A single parametrization drawn from a belief; theta lies in [0, 1].
struct ParameterSample {
  double theta = 0.0;
};

// Conjugate update: a positive outcome increments a, a negative one b.
BetaPosterior update(const BetaPosterior& post, bool outcome);

// Regularized incomplete beta I_x(a, b), the Beta(a, b) CDF at x.
// Continued-fraction evaluation (modified Lentz) with the symmetry switch at
// x = (a + 1) / (a + b + 2). Throws std::domain_error on x outside [0, 1]
// or nonpositive shapes.
double regularized_incomplete_beta(double a, double b, double x);

// Belief mass above the threshold: P(p > threshold) = 1 - I_threshold(a, b).
double mass_above(const BetaPosterior& post, double threshold);

// One Beta(a, b) draw via the two-gamma ratio; exact for all positive shapes.
ParameterSample sample(const BetaPosterior& post, RngStream& rng);

}  // namespace bv
