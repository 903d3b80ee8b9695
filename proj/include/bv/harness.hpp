#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bv/gridworld.hpp"
#include "bv/oracle.hpp"
#include "bv/verify.hpp"

namespace bv {

// Default seed for every CLI entry point; fixed rather than drawn from
// entropy so default runs are reproducible.
inline constexpr std::uint64_t kDefaultSeed = 1729;

// Observation-count presets for probing how the error bounds behave as the
// system sees more or less of its environment.
inline constexpr std::array<std::uint64_t, 4> kObservationPresets{5, 10, 50,
                                                                  500};

enum class Variant { BV, MLE };

const char* to_string(Variant v);

struct ExperimentConfig {
  std::uint64_t num_situations = 500;
  int grid_width = 10;
  int grid_height = 10;
  double obstacle_ratio = 0.2;
  std::size_t plan_length = 10;
  std::uint64_t observations_n = 10;
  double required_probability = 0.9;
  double required_confidence = 0.95;
  Requirement requirement{3};
  std::uint64_t ground_truth_runs = 10000;
  std::uint64_t max_iterations = 100000;
  std::uint64_t master_seed = kDefaultSeed;
  std::vector<Variant> variants{Variant::BV, Variant::MLE};
  unsigned threads = 0;  // 0 selects hardware concurrency

  void validate() const;
};

// One verification situation under one variant. Ground-truth fields are
// optional so that one-shot CLI verdicts (which have no oracle) share the
// same row format.
struct ExperimentRecord {
  std::uint64_t situation = 0;
  std::uint64_t seed = 0;
  std::optional<double> p_fail_true;
  ObservationSummary observations;
  std::optional<double> gt_psat;
  std::optional<double> gt_se;
  std::optional<bool> borderline;
  Variant variant = Variant::BV;
  Decision decision = Decision::Inconclusive;
  std::uint64_t iterations = 0;
  double final_confidence = 0.0;
  std::optional<ErrorClass> error_class;

  friend bool operator==(const ExperimentRecord&,
                         const ExperimentRecord&) = default;
};

// Records for one situation index, one per enabled variant. Every stream is
// derived from (master_seed, index), so situations are independent and can
// be recomputed in isolation.
std::vector<ExperimentRecord> run_situation(const ExperimentConfig& config,
                                            std::uint64_t index);

// The full sweep: situations run concurrently, records are returned in
// situation order (variants in config order within a situation) regardless
// of scheduling. A failing situation aborts the experiment with context.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config);

// Cumulative error-step curves for one variant; entry i covers that
// variant's first i + 1 records in situation order.
struct ErrorCurves {
  std::vector<std::uint64_t> type1;
  std::vector<std::uint64_t> type2;
  std::uint64_t indeterminate = 0;
  double bound_rate = 0.0;  // 1 - required_confidence
};

std::map<Variant, ErrorCurves> accumulate_errors(
    const std::vector<ExperimentRecord>& records, double required_confidence);

// Smallest k with P(Bin(n, rate) <= k) >= confidence.
std::uint64_t binomial_upper_envelope(std::uint64_t n, double rate,
                                      double confidence);

// The statistical gate: both of BV's final error counts must lie at or below
// the 99% binomial upper envelope for a true rate of 1 - required_confidence
// at n = num_situations.
struct GateResult {
  bool applicable = false;  // false when the BV variant was not run
  bool pass = false;
  std::uint64_t envelope = 0;
  std::uint64_t type1 = 0;
  std::uint64_t type2 = 0;
  std::uint64_t indeterminate = 0;
  std::uint64_t situations = 0;
};

GateResult evaluate_gate(const std::vector<ExperimentRecord>& records,
                         const ExperimentConfig& config);

// Records CSV, exact column order:
// situation,seed,p_fail_true,obs_n,obs_failures,gt_psat,gt_se,borderline,
// variant,decision,iterations,final_confidence,error_class
// Optional fields serialize as empty cells; doubles use shortest
// round-trip form, so identical records always produce identical bytes.
void write_records_csv(const std::vector<ExperimentRecord>& records,
                       const std::filesystem::path& file);

std::vector<ExperimentRecord> read_records(const std::filesystem::path& file);

struct ResultPaths {
  std::filesystem::path records;
  std::filesystem::path summary;
  std::vector<std::filesystem::path> curves;
};

// Persists the records CSV, a flat key=value summary (per-variant counts,
// rates, bound, gate result), and two-column index,count curve series per
// (variant, error type) plus the bound line.
ResultPaths write_results(const std::vector<ExperimentRecord>& records,
                          const ExperimentConfig& config,
                          const std::filesystem::path& directory);

}  // namespace bv
