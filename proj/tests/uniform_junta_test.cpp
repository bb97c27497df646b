#include <gtest/gtest.h>

#include <set>

#include "junta/errors.hpp"
#include "junta/functions.hpp"
#include "junta/uniform_junta.hpp"

namespace junta {
namespace {

TEST(UniformJuntaParams, Values) {
  // k = 1, eps = 1/30, delta = 1/15: 3 * (30 + 1) rounds, ceil(log2 45) passes.
  const auto p = uniform_junta_params(1, 1.0 / 30, 1.0 / 15);
  EXPECT_EQ(p.blocks, 2u);
  EXPECT_EQ(p.rounds_per_repetition, 93u);
  EXPECT_EQ(p.repetitions, 6u);
  EXPECT_EQ(uniform_junta_budget(p), 6u * (2 * 93 + 2 * 1));

  // k = 3, eps = 0.1: 18 blocks, ceil(3 * (30 + 3 log2 3)) = 105 rounds.
  const auto q = uniform_junta_params(3, 0.1, 1.0 / 15);
  EXPECT_EQ(q.blocks, 18u);
  EXPECT_EQ(q.rounds_per_repetition, 105u);
  EXPECT_EQ(uniform_junta_budget(q), 6u * (2 * 105 + 4 * 5));
}

TEST(UniformJuntaParams, BudgetWithinRoundBound) {
  for (std::size_t k = 1; k <= 8; ++k) {
    for (double eps : {0.01, 0.1, 0.5}) {
      const auto p = uniform_junta_params(k, eps, 0.1);
      const std::uint64_t s = p.blocks;
      std::uint64_t lg = 0;
      while ((std::uint64_t{1} << lg) < s) ++lg;
      EXPECT_LE(uniform_junta_budget(p), p.total_rounds() * (2 + lg));
    }
  }
}

TEST(UniformJuntaParams, DomainChecks) {
  EXPECT_THROW(uniform_junta_params(1, 0.1, 0.1, 0.0), ContractError);
  EXPECT_THROW(uniform_junta_params(1, 0.0, 0.1), ContractError);
  EXPECT_THROW(uniform_junta_params(1, 0.1, 1.0), ContractError);
}

// One-sided: k-juntas are never rejected, whatever the seed.
TEST(UniformJunta, NeverRejectsJuntas) {
  const auto p1 = uniform_junta_params(1, 0.1, 0.1);
  const auto p2 = uniform_junta_params(2, 0.1, 0.1);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    CountingOracle lit(literal(9, seed % 9, seed & 1));
    EXPECT_TRUE(uniform_junta_test(lit, p1, rng).accept);
    EXPECT_LE(lit.count(), uniform_junta_budget(p1));
    CountingOracle zero(constant(9, seed & 1));
    EXPECT_TRUE(uniform_junta_test(zero, p1, rng).accept);
    EXPECT_EQ(zero.count(), 2 * p1.total_rounds());
    CountingOracle two(random_junta(12, 2, seed));
    EXPECT_TRUE(uniform_junta_test(two, p2, rng).accept);
    EXPECT_LE(two.count(), uniform_junta_budget(p2));
  }
}

TEST(UniformJunta, RejectsParityWithCertificates) {
  const auto p = uniform_junta_params(1, 1.0 / 30, 1.0 / 15);
  const FunctionOracle fn = parity(6, IndexSet{0, 1});
  std::size_t rejects = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    CountingOracle g(fn);
    const auto res = uniform_junta_test(g, p, rng);
    EXPECT_LE(g.count(), uniform_junta_budget(p));
    if (res.accept) continue;
    ++rejects;
    ASSERT_EQ(res.certificates.size(), 2u);
    std::set<std::size_t> blocks;
    for (const auto& c : res.certificates) {
      blocks.insert(c.block);
      EXPECT_NE(fn(c.witness), fn(c.partner));
    }
    EXPECT_EQ(blocks.size(), 2u);
  }
  // Each pass separates x1 and x2 with probability 1/2; six passes miss with
  // probability 1/64.
  EXPECT_GE(rejects, 270u);
}

}  // namespace
}  // namespace junta
