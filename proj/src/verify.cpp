#include "bv/verify.hpp"

#include <cmath>
#include <stdexcept>

namespace bv {

VerificationConfig::VerificationConfig(double required_probability_,
                                       double required_confidence_,
                                       std::uint64_t max_iterations_,
                                       BetaPosterior satisfaction_prior_)
    : required_probability(required_probability_),
      required_confidence(required_confidence_),
      max_iterations(max_iterations_),
      satisfaction_prior(satisfaction_prior_) {
  if (!(required_probability > 0.0 && required_probability < 1.0)) {
    throw std::invalid_argument(
        "VerificationConfig: required probability must lie in (0, 1)");
  }
  if (!(required_confidence > 0.5 && required_confidence < 1.0)) {
    throw std::invalid_argument(
        "VerificationConfig: required confidence must lie in (0.5, 1)");
  }
  if (max_iterations == 0) {
    throw std::invalid_argument(
        "VerificationConfig: max iterations must be at least 1");
  }
}

const char* to_string(Decision d) {
  switch (d) {
    case Decision::Accept: return "Accept";
    case Decision::Reject: return "Reject";
    case Decision::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

double ObservationSummary::mle() const {
  if (count == 0) {
    throw std::invalid_argument(
        "ObservationSummary: point estimate undefined without observations");
  }
  return static_cast<double>(failures) / static_cast<double>(count);
}

BetaPosterior observation_posterior(const ObservationSummary& obs) {
  if (obs.failures > obs.count) {
    throw std::invalid_argument(
        "ObservationSummary: failures exceed observation count");
  }
  return BetaPosterior(static_cast<double>(obs.failures) + 1.0,
                       static_cast<double>(obs.count - obs.failures) + 1.0);
}

namespace {

template <typename DrawTheta>
Verdict run_sequential(DrawTheta&& draw_theta, const SimulationModel& model,
                       const VerificationConfig& config, RngStream& rng) {
  BetaPosterior belief = config.satisfaction_prior;
  double confidence = mass_above(belief, config.required_probability);
  if (confidence >= config.required_confidence) {
    return {Decision::Accept, 0, confidence, belief};
  }
  if (1.0 - confidence >= config.required_confidence) {
    return {Decision::Reject, 0, confidence, belief};
  }
  for (std::uint64_t iteration = 1; iteration <= config.max_iterations;
       ++iteration) {
    const double theta = draw_theta(rng);
    const bool sat = model.simulate(theta, rng);
    belief = update(belief, sat);
    confidence = mass_above(belief, config.required_probability);
    if (confidence >= config.required_confidence) {
      return {Decision::Accept, iteration, confidence, belief};
    }
    if (1.0 - confidence >= config.required_confidence) {
      return {Decision::Reject, iteration, confidence, belief};
    }
  }
  return {Decision::Inconclusive, config.max_iterations, confidence, belief};
}

}  // namespace

Verdict bv_verify(const BetaPosterior& model_uncertainty,
                  const SimulationModel& model, const VerificationConfig& config,
                  RngStream& rng) {
  return run_sequential(
      [&model_uncertainty](RngStream& r) {
        return sample(model_uncertainty, r).theta;
      },
      model, config, rng);
}

Verdict mle_verify(const ObservationSummary& observations,
                   const SimulationModel& model, const VerificationConfig& config,
                   RngStream& rng) {
  const double point_estimate = observations.mle();
  return run_sequential([point_estimate](RngStream&) { return point_estimate; },
                        model, config, rng);
}

SatisfactionEstimate subjective_satisfaction_estimate(
    const BetaPosterior& model_uncertainty, const SimulationModel& model,
    std::uint64_t n, RngStream& rng) {
  if (n == 0) {
    throw std::invalid_argument(
        "subjective_satisfaction_estimate: sample count must be positive");
  }
  std::uint64_t satisfied = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double theta = sample(model_uncertainty, rng).theta;
    if (model.simulate(theta, rng)) ++satisfied;
  }
  const double mean = static_cast<double>(satisfied) / static_cast<double>(n);
  const double se = std::sqrt(mean * (1.0 - mean) / static_cast<double>(n));
  return {mean, se, n};
}

}  // namespace bv
