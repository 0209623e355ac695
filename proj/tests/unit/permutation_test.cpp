#include "rankstream/permutation.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"

namespace rankstream {
namespace {

Permutation P(std::vector<int> r) { return Permutation(std::move(r)); }

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(P({}), std::invalid_argument);
  EXPECT_THROW(P({1, 1, 3}), std::invalid_argument);
  EXPECT_THROW(P({0, 1, 2}), std::invalid_argument);
  EXPECT_THROW(P({1, 2, 4}), std::invalid_argument);
  EXPECT_NO_THROW(P({3, 1, 2}));
}

TEST(Permutation, ParsesAndPrintsTextForm) {
  const auto p = Permutation::parse("2,1,3");
  EXPECT_EQ(p.rank(1), 2);
  EXPECT_EQ(p.rank(2), 1);
  EXPECT_EQ(p.rank(3), 3);
  EXPECT_EQ(p.to_string(), "2,1,3");
  EXPECT_EQ(Permutation::parse(" 3, 1 ,2 "), P({3, 1, 2}));
  EXPECT_THROW(Permutation::parse("2,,1"), std::invalid_argument);
  EXPECT_THROW(Permutation::parse("2;1"), std::invalid_argument);
  EXPECT_THROW(Permutation::parse("1,2,2"), std::invalid_argument);
}

TEST(Permutation, OrderingListsItemsByRank) {
  EXPECT_EQ(P({2, 3, 1}).ordering(), (std::vector<int>{3, 1, 2}));
}

TEST(KendallDistance, Examples) {
  EXPECT_EQ(kendall_distance(P({1, 2, 3}), P({1, 2, 3})), 0u);
  EXPECT_EQ(kendall_distance(Permutation::identity(7), Permutation::reverse(7)), 21u);
  EXPECT_EQ(kendall_distance(P({2, 1, 3}), P({1, 2, 3})), 1u);
}

TEST(KendallDistance, SizeMismatchThrows) {
  EXPECT_THROW(kendall_distance(P({1, 2}), P({1, 2, 3})), std::invalid_argument);
  EXPECT_THROW(kendall_distance_reference(P({1, 2}), P({1, 2, 3})), std::invalid_argument);
}

TEST(KendallDistance, MatchesQuadraticCountsOnRandomPairs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 50;
    const auto a = oracle::random_ranks(n, rng);
    const auto b = oracle::random_ranks(n, rng);
    const auto expected = oracle::kendall(a, b);
    EXPECT_EQ(kendall_distance(P(a), P(b)), expected);
    EXPECT_EQ(kendall_distance_reference(P(a), P(b)), expected);
    // Distance equals the inversion count of a o b^{-1}.
    EXPECT_EQ(count_inversions(compose(P(a), inverse(P(b))).ranks()), expected);
  }
}

TEST(KendallDistance, MetricProperties) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 12;
    const auto a = P(oracle::random_ranks(n, rng));
    const auto b = P(oracle::random_ranks(n, rng));
    const auto c = P(oracle::random_ranks(n, rng));
    const auto ab = kendall_distance(a, b);
    EXPECT_EQ(ab, kendall_distance(b, a));
    EXPECT_LE(ab, n * (n - 1) / 2);
    EXPECT_LE(ab, kendall_distance(a, c) + kendall_distance(c, b));
    EXPECT_EQ(kendall_distance(compose(a, c), compose(b, c)), ab);
  }
}

TEST(Compose, IdentityAndHandExample) {
  const auto s = P({3, 1, 4, 2});
  EXPECT_EQ(compose(s, Permutation::identity(4)), s);
  EXPECT_EQ(compose(Permutation::identity(4), s), s);
  EXPECT_EQ(compose(P({2, 1, 3}), P({1, 3, 2})), P({2, 3, 1}));
  EXPECT_THROW(compose(P({1, 2}), P({1})), std::invalid_argument);
}

TEST(Inverse, Examples) {
  EXPECT_EQ(inverse(P({1, 2, 3})), P({1, 2, 3}));
  EXPECT_EQ(inverse(P({2, 3, 1})), P({3, 1, 2}));
  EXPECT_EQ(Permutation::reverse(5), P({5, 4, 3, 2, 1}));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = P(oracle::random_ranks(1 + trial % 9, rng));
    EXPECT_EQ(compose(inverse(p), p), Permutation::identity(p.size()));
  }
}

TEST(AdjacentSwap, ExchangesAdjacentRanks) {
  EXPECT_EQ(adjacent_swap(P({1, 2, 3}), 1, 2), P({2, 1, 3}));
  EXPECT_THROW(adjacent_swap(P({1, 2, 3}), 1, 3), std::invalid_argument);
  EXPECT_THROW(adjacent_swap(P({1, 2, 3}), 2, 2), std::invalid_argument);
  EXPECT_THROW(adjacent_swap(P({1, 2, 3}), 0, 1), std::invalid_argument);
}

TEST(AdjacentSwap, DistanceOneAndInvolution) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 10;
    const auto p = P(oracle::random_ranks(n, rng));
    const auto order = p.ordering();
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const auto q = adjacent_swap(p, order[k], order[k + 1]);
      EXPECT_EQ(kendall_distance(q, p), 1u);
      EXPECT_EQ(adjacent_swap(q, order[k], order[k + 1]), p);
    }
  }
}

TEST(Enumerate, CountsAndDistinctness) {
  EXPECT_EQ(enumerate_permutations(1), std::vector<Permutation>{Permutation::identity(1)});
  const auto s3 = enumerate_permutations(3);
  EXPECT_EQ(s3.size(), 6u);
  EXPECT_EQ(std::set<Permutation>(s3.begin(), s3.end()).size(), 6u);
  EXPECT_EQ(enumerate_permutations(4).size(), 24u);
  std::size_t count = 0;
  for_each_permutation(7, [&](const Permutation&) { ++count; });
  EXPECT_EQ(count, 5040u);
}

TEST(Enumerate, GuardsFactorialBlowup) {
  EXPECT_THROW(enumerate_permutations(11), std::invalid_argument);
  EXPECT_THROW(enumerate_permutations(0), std::invalid_argument);
}

}  // namespace
}  // namespace rankstream
