#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "bv/posterior.hpp"
#include "bv/rng.hpp"

namespace bv {

// One bounded simulation run of the domain under parametrization theta.
// An implementation binds the situation (state, plan, requirement); for a
// fixed theta repeated calls must be i.i.d. Bernoulli in the rng, with some
// fixed satisfaction probability f_sat(theta).
class SimulationModel {
 public:
  virtual ~SimulationModel() = default;
  virtual bool simulate(double theta, RngStream& rng) const = 0;
};

// Adapter for ad-hoc models (analytic satisfaction functions, tests).
class FunctionModel final : public SimulationModel {
 public:
  explicit FunctionModel(std::function<bool(double, RngStream&)> fn)
      : fn_(std::move(fn)) {}
  bool simulate(double theta, RngStream& rng) const override {
    return fn_(theta, rng);
  }

 private:
  mutable std::function<bool(double, RngStream&)> fn_;
};

struct VerificationConfig {
  double required_probability;       // in (0, 1)
  double required_confidence;        // in (0.5, 1); at or below 0.5 the prior
                                     // is immediately decisive
  std::uint64_t max_iterations;      // cap; hitting it yields Inconclusive
  BetaPosterior satisfaction_prior;  // Beta(1, 1) unless configured

  explicit VerificationConfig(double required_probability_,
                              double required_confidence_,
                              std::uint64_t max_iterations_ = 100000,
                              BetaPosterior satisfaction_prior_ = {});
};

enum class Decision { Accept, Reject, Inconclusive };

const char* to_string(Decision d);

struct Verdict {
  Decision decision = Decision::Inconclusive;
  std::uint64_t iterations = 0;  // simulation runs performed
  double final_confidence = 0.0; // belief mass above the required probability
                                 // at termination
  BetaPosterior final_belief;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

// Sufficient statistics of Bernoulli failure observations.
struct ObservationSummary {
  std::uint64_t failures = 0;
  std::uint64_t count = 0;

  // Maximum-likelihood point estimate, failures / count. count must be
  // positive.
  double mle() const;

  friend bool operator==(const ObservationSummary&,
                         const ObservationSummary&) = default;
};

// Beta(failures + 1, count - failures + 1): the conjugate belief over the
// failure probability built from a uniform prior.
BetaPosterior observation_posterior(const ObservationSummary& obs);

// The Bayesian verification loop. Each iteration draws theta from the model
// uncertainty, simulates one run, folds the outcome into the satisfaction
// belief, and stops as soon as the belief mass above required_probability
// (or its complement) reaches required_confidence. The Accept test is
// evaluated before the Reject test. The prior itself is tested first, so a
// decisive prior terminates at iteration 0.
Verdict bv_verify(const BetaPosterior& model_uncertainty,
                  const SimulationModel& model, const VerificationConfig& config,
                  RngStream& rng);

// Same loop, but theta is pinned to the maximum-likelihood point estimate of
// the observations on every iteration. Throws on an empty observation set.
Verdict mle_verify(const ObservationSummary& observations,
                   const SimulationModel& model, const VerificationConfig& config,
                   RngStream& rng);

struct SatisfactionEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

// Monte Carlo estimate of the subjective satisfaction probability: the mean
// of n independent (theta draw, simulation) outcomes, which is unbiased for
// the integral of f_sat(theta) against the model uncertainty. The standard
// error is the binomial one, sqrt(mean (1 - mean) / n).
SatisfactionEstimate subjective_satisfaction_estimate(
    const BetaPosterior& model_uncertainty, const SimulationModel& model,
    std::uint64_t n, RngStream& rng);

}  // namespace bv
