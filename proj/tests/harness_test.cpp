#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"
#include "junta/bruteforce.hpp"
#include "junta/errors.hpp"
#include "junta/functions.hpp"
#include "junta/harness.hpp"

namespace junta {
namespace {

using nlohmann::json;

TEST(TrialSeed, Xor) {
  EXPECT_EQ(trial_seed(0b1100, 0b1010), 0b0110u);
  EXPECT_EQ(trial_seed(7, 0), 7u);
}

TEST(RunTrials, IndependentOfParallelism) {
  const FunctionOracle f = parity(8, IndexSet{0, 3, 5});
  const Distribution D = random_finite_support(8, 20, 3);
  const InstanceReport a = run_trials(f, D, 2, 0.2, 40, 17, 1);
  const InstanceReport b = run_trials(f, D, 2, 0.2, 40, 17, 3);
  EXPECT_EQ(a.records, b.records);
  EXPECT_EQ(a.accept_rate + a.reject_rate, 1.0);
  EXPECT_EQ(a.budget_violations, 0u);
  EXPECT_EQ(a.evidence_failures, 0u);
  for (std::size_t i : {0u, 13u, 39u}) {
    EXPECT_EQ(replay_trial(f, D, 2, 0.2, a.records[i].seed), a.records[i]);
    EXPECT_EQ(a.records[i].seed, trial_seed(17, i));
  }
}

TEST(Experiment, ParsesRunsAndReportsErrors) {
  const json cfg_json = json::parse(R"({
    "k": 1, "eps": 0.3, "trials": 20, "base_seed": 5,
    "instances": [
      {"name": "dictator", "function": {"kind": "literal", "n": 6, "index": 2},
       "distribution": {"kind": "uniform", "n": 6}, "certify": true},
      {"name": "parity3", "function": {"kind": "parity", "n": 6, "vars": [1, 2, 3]},
       "distribution": {"kind": "random_finite_support", "n": 6, "size": 10, "seed": 1},
       "k": 2},
      {"name": "mismatched", "function": {"kind": "literal", "n": 6, "index": 1},
       "distribution": {"kind": "uniform", "n": 7}}
    ]})");
  const ExperimentConfig cfg = parse_experiment_config(cfg_json);
  ASSERT_EQ(cfg.instances.size(), 3u);
  const ExperimentReport rep = run_experiment(cfg);
  ASSERT_EQ(rep.instances.size(), 3u);
  EXPECT_EQ(rep.instances[0].accept_rate, 1.0);
  ASSERT_TRUE(rep.instances[0].certificate.has_value());
  EXPECT_EQ(*rep.instances[0].certificate->distance.exact, 0);
  EXPECT_EQ(rep.instances[1].k, 2u);
  EXPECT_EQ(rep.instances[1].trials, 20u);
  EXPECT_TRUE(rep.instances[2].error.has_value());

  std::ostringstream csv;
  write_csv(csv, rep);
  EXPECT_EQ(csv.str().substr(0, 9), "instance,");
  const json j = rep;
  EXPECT_EQ(j["instances"].size(), 3u);

  EXPECT_THROW(parse_experiment_config(json{{"k", "x"}}), SpecError);
  json bad = cfg_json;
  bad["instances"][0]["function"]["index"] = 9;
  EXPECT_THROW(parse_experiment_config(bad), SpecError);
}

TEST(Sweep, SmallGrid) {
  const SweepReport s = sweep_budget({1, 2}, {0.2}, 5, 1, 32);
  ASSERT_EQ(s.rows.size(), 2u);
  EXPECT_EQ(s.total_violations(), 0u);
  for (const auto& row : s.rows) {
    EXPECT_LE(row.max_observed, row.budget);
    EXPECT_GT(row.observed_ratio, 0.0);
  }
  EXPECT_TRUE(s.ratios_bounded(1e9));
}

TEST(HybridDisagreementEstimate, CloseToExact) {
  const FunctionOracle f = random_table(6, 12);
  const Distribution D = random_finite_support(6, 8, 12);
  const IndexSet J{0, 3};
  Rng rng(1);
  EXPECT_NEAR(estimate_hybrid_disagreement(f, D, J, 40000, rng), hybrid_disagreement_exact(f, D, J).value, 0.015);
}

TEST(FarPanel, CertifiedFar) {
  const auto panel = far_instance_panel(1, 0.25);
  EXPECT_FALSE(panel.empty());
  for (const auto& inst : panel) {
    EXPECT_GE(inst.certificate.distance.value, 0.25) << inst.name;
    const FunctionOracle f = make_function(inst.function);
    EXPECT_EQ(distance_to_nearest_kjunta(f, Distribution::uniform(f.dimension()), 1)
                  .distance.exact,
              inst.certificate.distance.exact);
  }
}

}  // namespace
}  // namespace junta
