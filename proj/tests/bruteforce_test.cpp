#include <gtest/gtest.h>

#include "junta/bruteforce.hpp"
#include "junta/errors.hpp"
#include "junta/functions.hpp"

namespace junta {
namespace {

Point P(const char* s) { return Point::from_string(s); }

TEST(RelevantVariables, Examples) {
  EXPECT_EQ(relevant_variables(parity(6, IndexSet{1, 4})), (IndexSet{1, 4}));
  EXPECT_TRUE(relevant_variables(constant(5, true)).empty());
  // Declared on {x1, x2} but the core ignores x2.
  EXPECT_EQ(relevant_variables(junta_function(4, IndexSet{0, 1}, {false, true, false, true})),
            (IndexSet{0}));
  EXPECT_THROW(relevant_variables(constant(kMaxRelevantScanDimension + 1, 0)), CapacityError);
}

TEST(RelevantBlocks, Examples) {
  const BlockPartition p(5, {IndexSet{0, 1}, IndexSet{2}, IndexSet{3, 4}});
  EXPECT_EQ(relevant_blocks(parity(5, IndexSet{1, 4}), p), (std::vector<std::size_t>{0, 2}));
}

TEST(SubsetsUpTo, CountsAndOrder) {
  const auto s = subsets_up_to(4, 2);
  EXPECT_EQ(s.size(), 1u + 4 + 6);
  EXPECT_TRUE(s.front().empty());
  EXPECT_EQ(s[1], (IndexSet{0}));
  EXPECT_EQ(s.back(), (IndexSet{2, 3}));
}

TEST(Distance, Examples) {
  const Distribution U3 = Distribution::uniform(3);
  // Parity of two variables agrees with any 1-junta on exactly half the cube.
  EXPECT_EQ(*distance_to_nearest_kjunta(parity(3, IndexSet{0, 1}), U3, 1).distance.exact,
            Rational(1, 2));
  // Majority of three is x1 except on 011 and 100.
  const DistanceReport maj = distance_to_nearest_kjunta(majority(3, IndexSet{0, 1, 2}), U3, 1);
  EXPECT_EQ(*maj.distance.exact, Rational(1, 4));
  EXPECT_EQ(maj.best_vars, (IndexSet{0}));
  EXPECT_EQ(maj.best_core, (std::vector<bool>{false, true}));
  // Already a 2-junta.
  EXPECT_EQ(*distance_to_nearest_kjunta(parity(3, IndexSet{0, 2}), U3, 2).distance.exact, 0);

  // A distribution concentrated where parity agrees with x1.
  const Distribution D = Distribution::finite_support(
      {P("00"), P("10"), P("11")},
      std::vector<Rational>{Rational(1, 2), Rational(3, 8), Rational(1, 8)});
  EXPECT_EQ(*distance_to_nearest_kjunta(parity(2, IndexSet{0, 1}), D, 1).distance.exact,
            Rational(1, 8));
  EXPECT_EQ(*distance_to_nearest_kjunta(parity(2, IndexSet{0, 1}), D, 0).distance.exact,
            Rational(3, 8));
}

TEST(Distance, CapacityLimits) {
  EXPECT_THROW(distance_to_nearest_kjunta(constant(20, 0), Distribution::uniform(20), 2),
               CapacityError);
}

TEST(HybridDisagreement, Examples) {
  // f = x1 XOR x2, J = {x1}: disagreement exactly when y2 != x2.
  const Distribution U = Distribution::uniform(2);
  EXPECT_EQ(*hybrid_disagreement_exact(parity(2, IndexSet{0, 1}), U, IndexSet{0}).exact, Rational(1, 2));
  EXPECT_EQ(*hybrid_disagreement_exact(parity(2, IndexSet{0, 1}), U, IndexSet{0, 1}).exact, 0);
  // Point mass at 11, f = x1 AND x2, J = {x1}: f(11) = 1, hybrid 1y is 1 iff y2 = 1.
  const Distribution D = Distribution::finite_support({P("11")}, std::vector<Rational>{1});
  EXPECT_EQ(*hybrid_disagreement_exact(truth_table({false, false, false, true}), D, IndexSet{0}).exact,
            Rational(1, 2));
}

// Reference: Pr over x ~ D (finite support) and all y of f(x) != f(x_J o y).
Rational hybrid_disagreement_reference(const FunctionOracle& f, const Distribution& D, const IndexSet& J) {
  const std::size_t n = f.dimension();
  Rational total = 0;
  D.for_each_point([&](const Point& x, double, std::uint64_t) {
    std::uint64_t bad = 0;
    for (std::uint64_t yi = 0; yi < (std::uint64_t{1} << n); ++yi) {
      bad += f(x) != f(compose(x, J, Point::from_index(n, yi)));
    }
    total += *D.exact_weight(x) * Rational(bad, std::uint64_t{1} << n);
  });
  return total;
}

TEST(HybridDisagreement, MatchesReference) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const std::size_t n = 3 + s % 4;
    const FunctionOracle f = random_table(n, s);
    const Distribution D = random_finite_support(n, 1 + s % 6, s);
    for (const auto& J : subsets_up_to(n, 2)) {
      ASSERT_EQ(*hybrid_disagreement_exact(f, D, J).exact, hybrid_disagreement_reference(f, D, J));
    }
  }
}

// Any hybrid f(x_J o y) is a |J|-junta, so averaging over y cannot beat the
// nearest k-junta.
TEST(HybridDisagreement, AtLeastTheDistance) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t n = 4 + s % 3;
    const std::size_t k = 1 + s % 2;
    const FunctionOracle f = random_table(n, 50 + s);
    const Distribution D = random_finite_support(n, 10, 50 + s);
    const Rational d = *distance_to_nearest_kjunta(f, D, k).distance.exact;
    for (const auto& J : subsets_up_to(n, k)) {
      ASSERT_GE(*hybrid_disagreement_exact(f, D, J).exact, d);
    }
  }
}

}  // namespace
}  // namespace junta
