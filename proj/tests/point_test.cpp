#include <gtest/gtest.h>

#include "junta/errors.hpp"
#include "junta/point.hpp"

namespace junta {
namespace {

Point P(const char* s) { return Point::from_string(s); }

TEST(Point, StringAndIndexForms) {
  const Point x = P("0110");
  EXPECT_EQ(x.size(), 4u);
  EXPECT_FALSE(x[0]);
  EXPECT_TRUE(x[1]);
  EXPECT_EQ(x.to_string(), "0110");
  EXPECT_EQ(x.to_index(), 0b0110u);
  EXPECT_EQ(Point::from_index(4, 0b0110), x);
  EXPECT_THROW(P("01x"), SpecError);
}

TEST(Point, WideTailStaysClean) {
  const Point ones = Point::ones(70);
  EXPECT_EQ(ones.popcount(), 70u);
  EXPECT_TRUE((~ones).none());
  Rng rng(4);
  EXPECT_LE(Point::random(70, rng).popcount(), 70u);
}

TEST(Compose, Examples) {
  EXPECT_EQ(compose(P("1111"), IndexSet{0, 1}, P("0000")), P("1100"));
  Rng rng(1);
  const Point x = Point::random(9, rng);
  const Point y = Point::random(9, rng);
  EXPECT_EQ(compose(x, IndexSet::all(9), y), x);
  EXPECT_EQ(compose(x, IndexSet{}, y), y);
}

TEST(Compose, DimensionMismatchIsAContractError) {
  EXPECT_THROW(compose(P("11"), IndexSet{0}, P("000")), ContractError);
  EXPECT_THROW(xor_points(P("11"), P("000")), ContractError);
  EXPECT_THROW(zero_out(P("11"), IndexSet{5}), ContractError);
}

TEST(ZeroOut, Examples) {
  EXPECT_EQ(zero_out(P("1111"), IndexSet{2, 3}), P("1100"));
  const Point x = P("10110");
  EXPECT_EQ(zero_out(x, IndexSet{}), x);
  EXPECT_EQ(zero_out(x, IndexSet::all(5)), Point(5));
}

TEST(Xor, Examples) {
  EXPECT_EQ(xor_points(P("1100"), P("0110")), P("1010"));
  const Point x = P("10110");
  EXPECT_EQ(xor_points(x, Point(5)), x);
  EXPECT_EQ(xor_points(x, x), Point(5));
}

TEST(NegateOn, Examples) {
  EXPECT_EQ(negate_on(P("1010"), IndexSet{0, 1}), P("0110"));
  const Point x = P("10110");
  EXPECT_EQ(negate_on(x, IndexSet{}), x);
  EXPECT_EQ(negate_on(negate_on(x, IndexSet{1, 4}), IndexSet{1, 4}), x);
}

IndexSet random_subset(std::size_t n, Rng& rng) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < n; ++i) {
    if (uniform_bit(rng)) v.push_back(i);
  }
  return IndexSet(std::move(v));
}

// Composition algebra on random inputs, including multi-word points.
TEST(Compose, AlgebraProperties) {
  Rng rng(20240601);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 150);
    const Point x = Point::random(n, rng);
    const Point y = Point::random(n, rng);
    const IndexSet X = random_subset(n, rng);
    const Point c = compose(x, X, y);
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_EQ(c[i], X.contains(i) ? x[i] : y[i]);
    }
    ASSERT_EQ(compose(x, X, x), x);
    ASSERT_EQ(zero_out(x, X.complement(n)), compose(x, X, Point(n)));
    ASSERT_EQ(negate_on(x, X), compose(~x, X, x));
  }
}

TEST(IndexSet, OneBasedConversions) {
  const IndexSet s = IndexSet::from_one_based({3, 1, 3});
  EXPECT_EQ(s.members(), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(s.to_one_based(), (std::vector<std::size_t>{1, 3}));
  EXPECT_THROW(IndexSet::from_one_based({0}), SpecError);
  EXPECT_EQ(s.complement(4), (IndexSet{1, 3}));
  EXPECT_EQ(s.unite(IndexSet{1}), (IndexSet{0, 1, 2}));
  EXPECT_EQ(IndexSet::from_mask(P("1010")), (IndexSet{0, 2}));
}

}  // namespace
}  // namespace junta
