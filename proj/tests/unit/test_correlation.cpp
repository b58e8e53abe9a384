#include <gtest/gtest.h>

#include <cmath>

#include "editscore/correlation.hpp"
#include "editscore/error.hpp"
#include "editscore/rng.hpp"
#include "oracles.hpp"

using namespace editscore;
using V = std::vector<double>;

TEST(Srcc, Examples) {
  EXPECT_DOUBLE_EQ(srcc(V{3, 1, 2}, V{3, 1, 2}), 1.0);
  EXPECT_DOUBLE_EQ(srcc(V{1, 2, 3}, V{3, 2, 1}), -1.0);
  EXPECT_DOUBLE_EQ(srcc(V{1, 2, 3}, V{2, 1, 3}), 0.5);
  EXPECT_DOUBLE_EQ(srcc(V{1, 2, 3}, V{2, 1, 3}, SrccMode::kRankDifference), 0.5);
}

TEST(Srcc, Preconditions) {
  EXPECT_THROW(srcc(V{1, 2}, V{1, 2}), Error);
  EXPECT_THROW(srcc(V{1, 1, 1}, V{1, 2, 3}), Error);
  EXPECT_THROW(srcc(V{1, 2, 3}, V{1, 2}), Error);
}

TEST(Srcc, ModesAgreeWithoutTies) {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    V a(7), b(7);
    for (auto& x : a) x = rng.normal();
    for (auto& x : b) x = rng.normal();
    EXPECT_NEAR(srcc(a, b), srcc(a, b, SrccMode::kRankDifference), 1e-12);
  }
}

TEST(MidRanks, TiesShareTheMean) {
  EXPECT_EQ(mid_ranks(V{10, 20, 20, 5}), (V{2, 3.5, 3.5, 1}));
}

TEST(Kendall, Examples) {
  EXPECT_DOUBLE_EQ(krcc_tau_b(V{1, 2, 3}, V{1, 2, 3}), 1.0);
  EXPECT_DOUBLE_EQ(krcc_tau_b(V{1, 2, 3, 4}, V{4, 3, 2, 1}), -1.0);
  const auto c = kendall_counts(V{1, 2, 2, 3}, V{1, 2, 3, 3});
  EXPECT_EQ(c.concordant, 4);
  EXPECT_EQ(c.discordant, 0);
  EXPECT_EQ(c.tied_pred, 1);
  EXPECT_EQ(c.tied_human, 1);
  EXPECT_DOUBLE_EQ(krcc_tau_b(V{1, 2, 2, 3}, V{1, 2, 3, 3}), 0.8);
}

TEST(Kendall, FullyTiedListIsAnError) {
  EXPECT_THROW(krcc_tau_b(V{2, 2, 2}, V{1, 2, 3}), Error);
  EXPECT_THROW(krcc_tau_b(V{1, 2}, V{1, 2}), Error);
}

TEST(Kendall, MatchesBruteForceOnLargerTiedLists) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    V a(200), b(200);
    for (auto& x : a) x = static_cast<double>(rng.index(5));
    for (auto& x : b) x = static_cast<double>(rng.index(4)) + (rng.bernoulli(0.5) ? 0.0 : rng.uniform());
    EXPECT_NEAR(krcc_tau_b(a, b), oracle::kendall_tau_b(a, b), 1e-12);
    EXPECT_NEAR(srcc(a, b), oracle::spearman(a, b), 1e-12);
  }
}

TEST(RankMetrics, InvariantUnderIncreasingTransforms) {
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    V a(8), b(8), fa(8), gb(8);
    for (std::size_t i = 0; i < 8; ++i) {
      a[i] = static_cast<double>(rng.index(4)) + 1;
      b[i] = rng.uniform(-2, 2);
      fa[i] = std::exp(a[i]) - 7.0;
      gb[i] = b[i] * b[i] * b[i] + 10.0;
    }
    if (a == V(8, a[0])) continue;
    EXPECT_NEAR(srcc(a, b), srcc(fa, gb), 1e-12);
    EXPECT_NEAR(krcc_tau_b(a, b), krcc_tau_b(fa, gb), 1e-12);
  }
}

TEST(Pearson, FixedOrderIsDeterministic) {
  const V a{0.1, 0.7, 0.3, 0.9, 0.5}, b{1.0, 2.0, 1.5, 3.5, 2.0};
  EXPECT_EQ(pearson(a, b), pearson(a, b));
  EXPECT_NEAR(pearson(a, b), oracle::pearson(a, b), 1e-14);
}
