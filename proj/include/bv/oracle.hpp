#pragma once

#include <cstdint>

#include "bv/rng.hpp"
#include "bv/verify.hpp"

namespace bv {

// Frequency estimate of the satisfaction probability under the true
// environment parameter (not the learned belief).
struct GroundTruth {
  double p_sat_hat = 0.0;
  std::uint64_t runs = 0;
  double standard_error = 0.0;  // sqrt(p (1 - p) / runs)
};

enum class ErrorClass { TypeI, TypeII, Correct, Indeterminate };

const char* to_string(ErrorClass e);

// runs simulations, every one parametrized by theta_true.
GroundTruth ground_truth_psat(const SimulationModel& model, double theta_true,
                              std::uint64_t runs, RngStream& rng);

// Judges a verdict against the ground truth at the required probability:
// rejecting a truly satisfying situation is a type I error, accepting a
// truly violating one a type II error; Inconclusive is Indeterminate.
ErrorClass classify(const Verdict& verdict, const GroundTruth& truth,
                    double required_probability);

// True when the estimate lies within two standard errors of the decision
// threshold. Borderline situations keep their error tallies; the flag only
// marks them for sensitivity analysis.
bool borderline(const GroundTruth& truth, double required_probability);

}  // namespace bv
