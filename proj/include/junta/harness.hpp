#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "junta/bruteforce.hpp"
#include "junta/distribution.hpp"
#include "junta/function_spec.hpp"
#include "junta/tester.hpp"

namespace junta {

/// Seed of trial i in a batch started from base_seed.
inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) {
  return base_seed ^ trial;
}

struct InstanceConfig {
  std::string name;
  FunctionSpec function;
  nlohmann::json distribution;  // distribution record, parsed per run
  bool certify = false;
  std::optional<std::size_t> k;
  std::optional<double> eps;
};

struct ExperimentConfig {
  std::size_t k = 1;
  double eps = 0.1;
  std::size_t trials = 100;
  std::uint64_t base_seed = 1;
  std::size_t parallelism = 1;
  double c_rounds = kDefaultUniformJuntaRounds;
  // Pass thresholds written into the report: 2/3 minus a 3-sigma binomial
  // slack at 500 trials.
  double accept_threshold = 0.60;
  double reject_threshold = 0.60;
  std::vector<InstanceConfig> instances;
  std::string csv_path;
  std::string json_path;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j);

struct TrialRecord {
  std::uint64_t seed = 0;
  Outcome outcome = Outcome::kAccept;
  std::optional<RejectSite> site;
  std::uint64_t queries = 0;
  bool evidence_ok = true;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct InstanceReport {
  std::string name;
  std::size_t k = 0;
  double eps = 0.0;
  std::size_t trials = 0;
  double accept_rate = 0.0;
  double reject_rate = 0.0;
  std::map<std::string, std::size_t> reject_sites;
  double mean_queries = 0.0;
  std::uint64_t max_queries = 0;
  double stddev_queries = 0.0;
  std::uint64_t budget = 0;
  std::size_t budget_violations = 0;
  std::size_t evidence_failures = 0;
  std::optional<DistanceReport> certificate;
  std::optional<std::string> error;
  double wall_time_s = 0.0;
  std::vector<TrialRecord> records;
};

struct ExperimentReport {
  std::vector<InstanceReport> instances;
};

/// Runs `trials` independent tester runs with seeds trial_seed(base_seed, i).
/// Per-trial results do not depend on `parallelism`.
InstanceReport run_trials(const FunctionOracle& f, const Distribution& D,
                          std::size_t k, double eps, std::size_t trials,
                          std::uint64_t base_seed, std::size_t parallelism = 1,
                          double c_rounds = kDefaultUniformJuntaRounds);

/// Builds every instance, certifies it when asked, and runs its trials.
/// Per-instance failures (bad records, capacity limits) land in the row's
/// `error` field instead of aborting the experiment.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Replays a single trial of an instance.
TrialRecord replay_trial(const FunctionOracle& f, const Distribution& D, std::size_t k,
                         double eps, std::uint64_t seed,
                         double c_rounds = kDefaultUniformJuntaRounds);

void write_csv(std::ostream& out, const ExperimentReport& report);
void to_json(nlohmann::json& j, const TrialRecord& r);
void to_json(nlohmann::json& j, const InstanceReport& r);
void to_json(nlohmann::json& j, const ExperimentReport& r);

// --- query-budget sweep ----------------------------------------------------

struct SweepRow {
  std::size_t k = 0;
  double eps = 0.0;
  std::uint64_t max_observed = 0;
  double mean_observed = 0.0;
  std::uint64_t budget = 0;
  double scale = 0.0;  // (k/eps) ln(k/eps)
  double observed_ratio = 0.0;
  double budget_ratio = 0.0;
  std::size_t violations = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double median_ratio = 0.0;
  double max_ratio = 0.0;  // the fitted constant C for observed queries
  double max_budget_ratio = 0.0;

  /// No cell's observed ratio exceeds `factor` times the grid median.
  bool ratios_bounded(double factor) const;
  std::size_t total_violations() const;
};

/// For each (k, eps) runs `trials` tester runs on a random k-junta over n
/// coordinates with uniform samples, recording the largest query count.
SweepReport sweep_budget(const std::vector<std::size_t>& k_list,
                         const std::vector<double>& eps_list, std::size_t trials,
                         std::uint64_t base_seed, std::size_t n = 128,
                         std::size_t parallelism = 1);

void write_csv(std::ostream& out, const SweepReport& report);
void to_json(nlohmann::json& j, const SweepReport& r);

// --- Monte-Carlo hybrid distance -------------------------------------------

/// Frequency of f(x) != f(x_J o y_{J-bar}) over `samples` pairs x ~ D, y ~ U.
double estimate_hybrid_disagreement(const FunctionOracle& f, const Distribution& D, const IndexSet& J,
                       std::size_t samples, Rng& rng);

// --- uniform-junta calibration --------------------------------------------

struct CalibrationInstance {
  std::string name;
  FunctionSpec function;
  DistanceReport certificate;  // under the uniform distribution
};

/// Functions on m coordinates certified (by exhaustive search) to be at least
/// eps-far from every k-junta under the uniform distribution.
std::vector<CalibrationInstance> far_instance_panel(std::size_t k, double eps,
                                                    std::size_t m = 8);

struct CalibrationRow {
  std::string instance;
  std::size_t k = 0;
  double c_rounds = 0.0;
  std::size_t trials = 0;
  double reject_rate = 0.0;
  double target = 0.0;  // 1 - delta
  double mean_queries = 0.0;
  std::uint64_t max_queries = 0;
  std::uint64_t budget = 0;
  double certified_distance = 0.0;
};

std::vector<CalibrationRow> calibrate_uniform_junta(
    const std::vector<std::size_t>& k_list, const std::vector<double>& c_list,
    double eps, double delta, std::size_t trials, std::uint64_t base_seed);

void write_csv(std::ostream& out, const std::vector<CalibrationRow>& rows);

}  // namespace junta
