#include "bv/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace bv {

const char* to_string(ErrorClass e) {
  switch (e) {
    case ErrorClass::TypeI: return "TypeI";
    case ErrorClass::TypeII: return "TypeII";
    case ErrorClass::Correct: return "Correct";
    case ErrorClass::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

GroundTruth ground_truth_psat(const SimulationModel& model, double theta_true,
                              std::uint64_t runs, RngStream& rng) {
  if (runs == 0) {
    throw std::invalid_argument("ground_truth_psat: need at least one run");
  }
  std::uint64_t satisfied = 0;
  for (std::uint64_t i = 0; i < runs; ++i) {
    if (model.simulate(theta_true, rng)) ++satisfied;
  }
  const double p = static_cast<double>(satisfied) / static_cast<double>(runs);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(runs));
  return {p, runs, se};
}

ErrorClass classify(const Verdict& verdict, const GroundTruth& truth,
                    double required_probability) {
  if (verdict.decision == Decision::Inconclusive) {
    return ErrorClass::Indeterminate;
  }
  const bool satisfies_truly = truth.p_sat_hat >= required_probability;
  if (verdict.decision == Decision::Reject && satisfies_truly) {
    return ErrorClass::TypeI;
  }
  if (verdict.decision == Decision::Accept && !satisfies_truly) {
    return ErrorClass::TypeII;
  }
  return ErrorClass::Correct;
}

bool borderline(const GroundTruth& truth, double required_probability) {
  return std::fabs(truth.p_sat_hat - required_probability) <=
         2.0 * truth.standard_error;
}

}  // namespace bv
