#include "bv/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "bv/posterior.hpp"

namespace bv {

namespace {

// derive() keys for the per-situation sub-streams. Fixed constants: changing
// them changes every published result.
namespace stream_role {
constexpr std::uint64_t kWorld = 1;
constexpr std::uint64_t kPlan = 2;
constexpr std::uint64_t kFailureProbability = 3;
constexpr std::uint64_t kObservations = 4;
constexpr std::uint64_t kBv = 5;
constexpr std::uint64_t kMle = 6;
constexpr std::uint64_t kGroundTruth = 7;
}  // namespace stream_role

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

double parse_double(const std::string& text, const char* field) {
  double value = 0.0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string("read_records: bad ") + field +
                                " value '" + text + "'");
  }
  return value;
}

std::uint64_t parse_u64(const std::string& text, const char* field) {
  std::uint64_t value = 0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string("read_records: bad ") + field +
                                " value '" + text + "'");
  }
  return value;
}

constexpr const char* kCsvHeader =
    "situation,seed,p_fail_true,obs_n,obs_failures,gt_psat,gt_se,borderline,"
    "variant,decision,iterations,final_confidence,error_class";

Decision parse_decision(const std::string& text) {
  if (text == "Accept") return Decision::Accept;
  if (text == "Reject") return Decision::Reject;
  if (text == "Inconclusive") return Decision::Inconclusive;
  throw std::invalid_argument("read_records: bad decision value '" + text + "'");
}

Variant parse_variant(const std::string& text) {
  if (text == "BV") return Variant::BV;
  if (text == "MLE") return Variant::MLE;
  throw std::invalid_argument("read_records: bad variant value '" + text + "'");
}

ErrorClass parse_error_class(const std::string& text) {
  if (text == "TypeI") return ErrorClass::TypeI;
  if (text == "TypeII") return ErrorClass::TypeII;
  if (text == "Correct") return ErrorClass::Correct;
  if (text == "Indeterminate") return ErrorClass::Indeterminate;
  throw std::invalid_argument("read_records: bad error_class value '" + text +
                              "'");
}

}  // namespace

const char* to_string(Variant v) {
  switch (v) {
    case Variant::BV: return "BV";
    case Variant::MLE: return "MLE";
  }
  return "BV";
}

void ExperimentConfig::validate() const {
  if (num_situations == 0) {
    throw std::invalid_argument("ExperimentConfig: need at least one situation");
  }
  if (grid_width < 1 || grid_height < 1 ||
      static_cast<std::int64_t>(grid_width) * grid_height < 2) {
    throw std::invalid_argument("ExperimentConfig: grid needs at least two cells");
  }
  if (!(obstacle_ratio >= 0.0 && obstacle_ratio < 1.0)) {
    throw std::invalid_argument(
        "ExperimentConfig: obstacle ratio must lie in [0, 1)");
  }
  if (plan_length == 0) {
    throw std::invalid_argument("ExperimentConfig: plan length must be positive");
  }
  if (observations_n == 0) {
    throw std::invalid_argument(
        "ExperimentConfig: need at least one observation");
  }
  if (requirement.max_hits_exclusive < 1) {
    throw std::invalid_argument("ExperimentConfig: hit bound must be at least 1");
  }
  if (ground_truth_runs == 0) {
    throw std::invalid_argument(
        "ExperimentConfig: need at least one ground-truth run");
  }
  if (variants.empty()) {
    throw std::invalid_argument("ExperimentConfig: no variants enabled");
  }
  // Delegates the probability/confidence/iteration constraints.
  VerificationConfig(required_probability, required_confidence, max_iterations);
}

std::vector<ExperimentRecord> run_situation(const ExperimentConfig& config,
                                            std::uint64_t index) {
  const RngStream situation = RngStream(config.master_seed).derive(index);

  RngStream p_fail_stream = situation.derive(stream_role::kFailureProbability);
  const double p_fail_true = p_fail_stream.next_double();

  RngStream world_stream = situation.derive(stream_role::kWorld);
  GridWorld world = generate_world(config.grid_width, config.grid_height,
                                   config.obstacle_ratio, world_stream);

  RngStream plan_stream = situation.derive(stream_role::kPlan);
  Plan plan = random_plan(config.plan_length, plan_stream);

  RngStream obs_stream = situation.derive(stream_role::kObservations);
  const ObservationSummary observations =
      observe_failures(p_fail_true, config.observations_n, obs_stream);
  const BetaPosterior model_uncertainty = observation_posterior(observations);

  const PlanSimulation model(std::move(world), std::move(plan),
                             config.requirement);

  RngStream truth_stream = situation.derive(stream_role::kGroundTruth);
  const GroundTruth truth = ground_truth_psat(
      model, p_fail_true, config.ground_truth_runs, truth_stream);

  const VerificationConfig verification(config.required_probability,
                                        config.required_confidence,
                                        config.max_iterations);

  std::vector<ExperimentRecord> records;
  records.reserve(config.variants.size());
  for (const Variant variant : config.variants) {
    Verdict verdict;
    if (variant == Variant::BV) {
      RngStream run_stream = situation.derive(stream_role::kBv);
      verdict = bv_verify(model_uncertainty, model, verification, run_stream);
    } else {
      RngStream run_stream = situation.derive(stream_role::kMle);
      verdict = mle_verify(observations, model, verification, run_stream);
    }
    ExperimentRecord record;
    record.situation = index;
    record.seed = situation.seed();
    record.p_fail_true = p_fail_true;
    record.observations = observations;
    record.gt_psat = truth.p_sat_hat;
    record.gt_se = truth.standard_error;
    record.borderline = borderline(truth, config.required_probability);
    record.variant = variant;
    record.decision = verdict.decision;
    record.iterations = verdict.iterations;
    record.final_confidence = verdict.final_confidence;
    record.error_class = classify(verdict, truth, config.required_probability);
    records.push_back(record);
  }
  return records;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  std::vector<std::vector<ExperimentRecord>> slots(config.num_situations);

  unsigned threads = config.threads;
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, config.num_situations));

  std::atomic<std::uint64_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  const auto worker = [&] {
    for (;;) {
      const std::uint64_t index = next.fetch_add(1);
      if (index >= config.num_situations) return;
      try {
        slots[index] = run_situation(config, index);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          try {
            std::throw_with_nested(std::runtime_error(
                "run_experiment: situation " + std::to_string(index) +
                " failed"));
          } catch (...) {
            failure = std::current_exception();
          }
        }
        return;
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ExperimentRecord> records;
  records.reserve(config.num_situations * config.variants.size());
  for (auto& slot : slots) {
    for (ExperimentRecord& record : slot) records.push_back(std::move(record));
  }
  return records;
}

std::map<Variant, ErrorCurves> accumulate_errors(
    const std::vector<ExperimentRecord>& records, double required_confidence) {
  std::map<Variant, ErrorCurves> curves;
  for (const ExperimentRecord& record : records) {
    auto [it, inserted] = curves.try_emplace(record.variant);
    ErrorCurves& c = it->second;
    if (inserted) c.bound_rate = 1.0 - required_confidence;
    std::uint64_t type1 = c.type1.empty() ? 0 : c.type1.back();
    std::uint64_t type2 = c.type2.empty() ? 0 : c.type2.back();
    if (record.error_class == ErrorClass::TypeI) ++type1;
    if (record.error_class == ErrorClass::TypeII) ++type2;
    if (record.error_class == ErrorClass::Indeterminate) ++c.indeterminate;
    c.type1.push_back(type1);
    c.type2.push_back(type2);
  }
  return curves;
}

std::uint64_t binomial_upper_envelope(std::uint64_t n, double rate,
                                      double confidence) {
  if (n == 0) {
    throw std::invalid_argument("binomial_upper_envelope: n must be positive");
  }
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("binomial_upper_envelope: rate out of [0, 1]");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument(
        "binomial_upper_envelope: confidence out of (0, 1)");
  }
  if (rate == 0.0) return 0;
  if (rate == 1.0) return n;
  for (std::uint64_t k = 0; k < n; ++k) {
    // P(Bin(n, p) <= k) written through the beta CDF.
    const double cdf = regularized_incomplete_beta(
        static_cast<double>(n - k), static_cast<double>(k) + 1.0, 1.0 - rate);
    if (cdf >= confidence) return k;
  }
  return n;
}

GateResult evaluate_gate(const std::vector<ExperimentRecord>& records,
                         const ExperimentConfig& config) {
  GateResult gate;
  gate.situations = config.num_situations;
  gate.envelope = binomial_upper_envelope(
      config.num_situations, 1.0 - config.required_confidence, 0.99);
  for (const ExperimentRecord& record : records) {
    if (record.variant != Variant::BV) continue;
    gate.applicable = true;
    if (record.error_class == ErrorClass::TypeI) ++gate.type1;
    if (record.error_class == ErrorClass::TypeII) ++gate.type2;
    if (record.error_class == ErrorClass::Indeterminate) ++gate.indeterminate;
  }
  gate.pass = gate.applicable && gate.type1 <= gate.envelope &&
              gate.type2 <= gate.envelope;
  return gate;
}

void write_records_csv(const std::vector<ExperimentRecord>& records,
                       const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_records_csv: cannot open " + file.string());
  }
  out << kCsvHeader << '\n';
  for (const ExperimentRecord& r : records) {
    out << r.situation << ',' << r.seed << ',';
    if (r.p_fail_true) out << format_double(*r.p_fail_true);
    out << ',' << r.observations.count << ',' << r.observations.failures << ',';
    if (r.gt_psat) out << format_double(*r.gt_psat);
    out << ',';
    if (r.gt_se) out << format_double(*r.gt_se);
    out << ',';
    if (r.borderline) out << (*r.borderline ? '1' : '0');
    out << ',' << to_string(r.variant) << ',' << to_string(r.decision) << ','
        << r.iterations << ',' << format_double(r.final_confidence) << ',';
    if (r.error_class) out << to_string(*r.error_class);
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("write_records_csv: write failed for " +
                             file.string());
  }
}

std::vector<ExperimentRecord> read_records(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_records: cannot open " + file.string());
  }
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("read_records: unexpected header in " +
                                file.string());
  }
  std::vector<ExperimentRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (fields.size() != 13) {
      throw std::invalid_argument("read_records: expected 13 fields, got " +
                                  std::to_string(fields.size()));
    }
    ExperimentRecord r;
    r.situation = parse_u64(fields[0], "situation");
    r.seed = parse_u64(fields[1], "seed");
    if (!fields[2].empty()) r.p_fail_true = parse_double(fields[2], "p_fail_true");
    r.observations.count = parse_u64(fields[3], "obs_n");
    r.observations.failures = parse_u64(fields[4], "obs_failures");
    if (!fields[5].empty()) r.gt_psat = parse_double(fields[5], "gt_psat");
    if (!fields[6].empty()) r.gt_se = parse_double(fields[6], "gt_se");
    if (!fields[7].empty()) r.borderline = fields[7] == "1";
    r.variant = parse_variant(fields[8]);
    r.decision = parse_decision(fields[9]);
    r.iterations = parse_u64(fields[10], "iterations");
    r.final_confidence = parse_double(fields[11], "final_confidence");
    if (!fields[12].empty()) r.error_class = parse_error_class(fields[12]);
    records.push_back(std::move(r));
  }
  return records;
}

ResultPaths write_results(const std::vector<ExperimentRecord>& records,
                          const ExperimentConfig& config,
                          const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) {
    throw std::runtime_error("write_results: cannot create directory " +
                             directory.string() + ": " + ec.message());
  }

  ResultPaths paths;
  paths.records = directory / "records.csv";
  write_records_csv(records, paths.records);

  const auto curves = accumulate_errors(records, config.required_confidence);
  const GateResult gate = evaluate_gate(records, config);

  std::size_t curve_length = 0;
  for (const auto& [variant, c] : curves) {
    std::string name = to_string(variant);
    for (char& ch : name) ch = static_cast<char>(std::tolower(ch));
    const std::array<std::pair<const char*, const std::vector<std::uint64_t>*>,
                     2>
        series{{{"type1", &c.type1}, {"type2", &c.type2}}};
    for (const auto& [label, counts] : series) {
      const std::filesystem::path path =
          directory / ("curve_" + name + "_" + label + ".csv");
      std::ofstream out(path, std::ios::binary);
      if (!out) {
        throw std::runtime_error("write_results: cannot open " + path.string());
      }
      out << "index,count\n";
      for (std::size_t i = 0; i < counts->size(); ++i) {
        out << i << ',' << (*counts)[i] << '\n';
      }
      paths.curves.push_back(path);
    }
    curve_length = std::max(curve_length, c.type1.size());
  }

  {
    const std::filesystem::path path = directory / "curve_bound.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("write_results: cannot open " + path.string());
    }
    out << "index,count\n";
    const double rate = 1.0 - config.required_confidence;
    for (std::size_t i = 0; i < curve_length; ++i) {
      out << i << ',' << format_double(rate * static_cast<double>(i + 1))
          << '\n';
    }
    paths.curves.push_back(path);
  }

  paths.summary = directory / "summary.txt";
  std::ofstream summary(paths.summary, std::ios::binary);
  if (!summary) {
    throw std::runtime_error("write_results: cannot open " +
                             paths.summary.string());
  }
  summary << "situations=" << config.num_situations << '\n'
          << "master_seed=" << config.master_seed << '\n'
          << "observations_n=" << config.observations_n << '\n'
          << "required_probability="
          << format_double(config.required_probability) << '\n'
          << "required_confidence=" << format_double(config.required_confidence)
          << '\n'
          << "bound_rate=" << format_double(1.0 - config.required_confidence)
          << '\n'
          << "envelope_99=" << gate.envelope << '\n';
  for (const auto& [variant, c] : curves) {
    std::string name = to_string(variant);
    for (char& ch : name) ch = static_cast<char>(std::tolower(ch));
    const std::uint64_t type1 = c.type1.empty() ? 0 : c.type1.back();
    const std::uint64_t type2 = c.type2.empty() ? 0 : c.type2.back();
    const double n = static_cast<double>(config.num_situations);
    summary << name << "_type1_count=" << type1 << '\n'
            << name << "_type1_rate=" << format_double(type1 / n) << '\n'
            << name << "_type2_count=" << type2 << '\n'
            << name << "_type2_rate=" << format_double(type2 / n) << '\n'
            << name << "_indeterminate=" << c.indeterminate << '\n';
  }
  summary << "gate="
          << (gate.applicable ? (gate.pass ? "pass" : "fail") : "skipped")
          << '\n';
  if (!summary) {
    throw std::runtime_error("write_results: write failed for " +
                             paths.summary.string());
  }
  return paths;
}

}  // namespace bv
