#include <gtest/gtest.h>

#include "json.hpp"
#include "junta/bruteforce.hpp"
#include "junta/errors.hpp"
#include "junta/functions.hpp"
#include "junta/tester.hpp"

namespace junta {
namespace {

TEST(DeriveParams, HandComputedValues) {
  // k = 2, eps = 0.1: ln 30 = 3.4012, ln 15 = 2.7081, ln(4/3) = 0.28768.
  const TesterParams p = derive_params(2, 0.1);
  EXPECT_EQ(p.r, 8u);
  EXPECT_EQ(p.M, 137u);            // ceil(40 ln 30) = ceil(136.05)
  EXPECT_EQ(p.t_threshold, 69u);   // ceil(20 ln 30) = ceil(68.02)
  EXPECT_EQ(p.M_prime, 55u);       // ceil(20 ln 15) = ceil(54.16)
  EXPECT_EQ(p.h, 26u);             // ceil(ln 1650 / ln(4/3)) = ceil(25.75)

  const TesterParams q = derive_params(1, 0.5);
  EXPECT_EQ(q.r, 2u);
  EXPECT_EQ(q.M, 11u);
  EXPECT_EQ(q.t_threshold, 11u);
  EXPECT_EQ(q.M_prime, 11u);
  EXPECT_EQ(q.h, 18u);             // ceil(ln 165 / ln(4/3)) = ceil(17.75)
}

TEST(DeriveParams, Budget) {
  // literal test: 6 passes of (2*93 + 2) queries = 1128.
  EXPECT_EQ(query_budget(derive_params(2, 0.1)),
            2u * 137 + 3u * 3 + 2u * (1128 + 2) + 55u * (4 * 2 * 26 + 2));
  EXPECT_EQ(query_budget(derive_params(1, 0.5)),
            2u * 11 + 2u * 1 + 1u * (1128 + 2) + 11u * (4 * 18 + 2));
}

TEST(DeriveParams, DomainChecks) {
  EXPECT_THROW(derive_params(0, 0.1), ContractError);
  EXPECT_THROW(derive_params(1, 0.0), ContractError);
  EXPECT_THROW(derive_params(1, 1.0), ContractError);
}

TEST(RejectSite, LabelsRoundTrip) {
  for (auto s : {RejectSite::kOverflow, RejectSite::kUniformJunta, RejectSite::kConstant,
                 RejectSite::kGCounter, RejectSite::kFinal}) {
    EXPECT_EQ(reject_site_from_string(to_string(s)), s);
  }
  EXPECT_EQ(to_string(RejectSite::kOverflow), "8-overflow");
  EXPECT_THROW(reject_site_from_string("nope"), SpecError);
}

void expect_consistent(const Transcript& t) {
  std::uint64_t sum = 0;
  for (auto q : t.queries_by_stage) sum += q;
  EXPECT_EQ(sum, t.total_queries);
  EXPECT_LE(t.total_queries, query_budget(t.params));
  EXPECT_LE(t.phase2_iterations, t.params.M);
  EXPECT_EQ(t.verdict.accepted(), !t.verdict.site.has_value());
}

TEST(Tester, ConstantZeroAlwaysAccepts) {
  const TesterParams p = derive_params(2, 0.2);
  const FunctionOracle f = constant(20, false);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Transcript t = test_distribution_free(f, Distribution::uniform(20), p, rng);
    EXPECT_TRUE(t.verdict.accepted());
    EXPECT_TRUE(t.relevant.empty());
    EXPECT_EQ(t.stage_queries(Stage::kSearch), 0u);
    expect_consistent(t);
  }
}

BlockPartition separating_partition(std::size_t n, std::size_t r, const IndexSet& rel,
                                    Rng& rng) {
  std::vector<std::size_t> block_of(n);
  for (std::size_t i = 0; i < n; ++i) block_of[i] = uniform_index(rng, r);
  std::size_t next = 0;
  for (auto v : rel) block_of[v] = next++;
  return BlockPartition(n, r, block_of);
}

// With relevant variables in distinct blocks, every stage of the test is
// consistent with a k-junta, so acceptance is certain.
TEST(Tester, SeparatingPartitionAlwaysAccepts) {
  const std::size_t n = 20;
  for (std::size_t k : {1u, 2u, 3u}) {
    const TesterParams p = derive_params(k, 0.2);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const FunctionOracle f = random_junta(n, k, seed);
      const IndexSet rel = relevant_variables(f);
      Rng rng(seed + 1000);
      const BlockPartition part = separating_partition(n, p.r, rel, rng);
      const Distribution D =
          seed % 2 ? Distribution::uniform(n) : random_finite_support(n, 16, seed);
      const Transcript t = test_distribution_free(f, D, p, rng, &part);
      EXPECT_TRUE(t.verdict.accepted()) << "k=" << k << " seed=" << seed;
      EXPECT_LE(t.relevant.size(), k);
      expect_consistent(t);
    }
  }
}

TEST(Tester, OverrideMustMatch) {
  const TesterParams p = derive_params(1, 0.2);
  Rng rng(0);
  const BlockPartition wrong(4, {IndexSet{0, 1, 2, 3}});
  EXPECT_THROW(test_distribution_free(constant(4, 0), Distribution::uniform(4), p, rng, &wrong),
               ContractError);
  EXPECT_THROW(test_distribution_free(constant(4, 0), Distribution::uniform(5), p, rng),
               ContractError);
}

// Far instances mostly reject, and every rejection carries evidence that
// replays against the bare function within four calls (2(k+1) on overflow).
TEST(Tester, RejectionsCarryReplayableEvidence) {
  const std::size_t k = 1;
  const TesterParams p = derive_params(k, 0.2);
  const FunctionOracle f = parity(6, IndexSet{0, 1, 2});
  std::size_t rejects = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const Transcript t = test_distribution_free(f, Distribution::uniform(6), p, rng);
    expect_consistent(t);
    if (t.verdict.accepted()) continue;
    ++rejects;
    std::size_t calls = 0;
    EXPECT_TRUE(replay_evidence(f, t.verdict, &calls));
    if (*t.verdict.site == RejectSite::kOverflow) {
      EXPECT_EQ(calls, 2 * (k + 1));
    } else {
      EXPECT_LE(calls, 4u);
    }
  }
  EXPECT_GT(rejects, 150u);
}

TEST(Tester, ReplayDetectsForgedEvidence) {
  Verdict v;
  v.outcome = Outcome::kReject;
  v.site = RejectSite::kFinal;
  v.evidence.push_back({Point::from_string("10"), Point::from_string("00"), true, false, true});
  EXPECT_TRUE(replay_evidence(literal(2, 0), v));
  EXPECT_FALSE(replay_evidence(literal(2, 1), v));
}

TEST(Tester, SeedDeterminesTranscript) {
  TesterParams p = derive_params(2, 0.1, 99);
  const FunctionOracle f = random_junta(64, 3, 4);
  const Distribution D = Distribution::uniform(64);
  const nlohmann::json a = test_distribution_free(f, D, p);
  const nlohmann::json b = test_distribution_free(f, D, p);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a["params"]["query_budget"], query_budget(p));
}

}  // namespace
}  // namespace junta
