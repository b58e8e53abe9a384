#include <gtest/gtest.h>

#include <cmath>

#include "editscore/adjusted_leaderboard.hpp"
#include "fixtures.hpp"

using namespace editscore;

TEST(AdjustedLeaderboard, SingleSystemReportsNaiveMeans) {
  std::vector<AnnotationRecord> ann{fixtures::annotation("a", "g1", "m", 4, 3, 2),
                                    fixtures::annotation("b", "g2", "m", 2, 3, 4)};
  std::vector<ItemCovariates> items{{"g1", "style", 3, 1, {}}, {"g2", "quantity", 8, 2, {}}};
  const auto lb = adjusted_leaderboard(
      validate_dataset(ann, {}, ItemIndex(items, default_task_vocabulary(), "words")), ScoreSource::human());
  ASSERT_EQ(lb.rows.size(), 1u);
  EXPECT_EQ(*lb.rows[0].dims[0], 3.0);
  EXPECT_EQ(*lb.rows[0].overall_mean, 3.0);
  EXPECT_FALSE(lb.rows[0].adjusted);
}

TEST(AdjustedLeaderboard, FlagsPartialCoverageAndKeepsFullSystemsNaive) {
  const auto sim = fixtures::coverage_simulation(42, 80);
  const auto lb = adjusted_leaderboard(sim.table, ScoreSource::judge("sim"));
  ASSERT_EQ(lb.rows.size(), 2u);
  EXPECT_FALSE(lb.rows[0].adjusted);
  EXPECT_TRUE(lb.rows[1].adjusted);
  ASSERT_TRUE(lb.propensity.has_value());
  for (Dimension d : kDimensions) EXPECT_NEAR(*lb.rows[0].dims[index(d)], lb.rows[0].naive[index(d)], 1e-6);
  const auto& b = lb.rows[1];
  EXPECT_NEAR(*b.overall_mean, (*b.dims[0] + *b.dims[1] + *b.dims[2]) / 3.0, 1e-15);
}

TEST(AdjustedLeaderboard, CorrectsAnInvertedNaiveRanking) {
  // B is truly better than A but only appears on easy items... the reverse:
  // B is truly better yet was only run on the hardest items, so its naive
  // mean trails A's.
  std::vector<AnnotationRecord> ann;
  std::vector<PredictionRecord> pred;
  std::vector<ItemCovariates> items;
  Rng rng(9);
  for (int i = 0; i < 60; ++i) {
    const bool hard = i % 2 == 0;
    const std::string item = "it" + std::to_string(i);
    items.push_back({item, hard ? "camera_motion" : "style", 10, 1, {}});
    const double u = hard ? -0.8 : 0.8;
    for (const char* s : {"A", "B"}) {
      const bool is_b = s[0] == 'B';
      if (is_b && !(hard ? rng.bernoulli(0.9) : rng.bernoulli(0.15))) continue;
      const double y = (is_b ? 2.7 : 2.5) + u + rng.normal(0, 0.1);
      const std::string sample = std::string(s) + item;
      ann.push_back(fixtures::annotation(sample, item, s, 3, 3, 3));
      pred.push_back(fixtures::prediction(sample, s, "j", y, y, y));
    }
  }
  const auto table = validate_dataset(ann, pred, ItemIndex(items, default_task_vocabulary(), "words"));
  const auto lb = adjusted_leaderboard(table, ScoreSource::judge("j"));
  const auto& a = lb.rows[0];
  const auto& b = lb.rows[1];
  EXPECT_LT(b.naive[0], a.naive[0]);
  EXPECT_GT(*b.dims[0], *a.dims[0]);
}

TEST(AdjustedLeaderboard, GroupMissingFromItemsIsAnError) {
  std::vector<AnnotationRecord> ann{fixtures::annotation("a", "g1", "m", 4, 3, 2),
                                    fixtures::annotation("b", "g9", "n", 2, 3, 4)};
  std::vector<ItemCovariates> items{{"g1", "style", 3, 1, {}}};
  EXPECT_THROW(adjusted_leaderboard(validate_dataset(ann, {}, ItemIndex(items, default_task_vocabulary(), "words")),
                                    ScoreSource::human()),
               Error);
}

TEST(AdjustedLeaderboard, ClipFloorValidated) {
  const auto sim = fixtures::coverage_simulation(1, 20);
  AdjustOptions opts;
  opts.clip_floor = 0.0;
  EXPECT_THROW(adjusted_leaderboard(sim.table, ScoreSource::judge("sim"), opts), Error);
}

TEST(AdjustedLeaderboard, ThreadCountDoesNotChangeResults) {
  const auto sim = fixtures::coverage_simulation(77, 100);
  setenv("VEFX_EVAL_THREADS", "1", 1);
  const auto one = adjusted_leaderboard(sim.table, ScoreSource::judge("sim"));
  setenv("VEFX_EVAL_THREADS", "3", 1);
  const auto three = adjusted_leaderboard(sim.table, ScoreSource::judge("sim"));
  unsetenv("VEFX_EVAL_THREADS");
  for (std::size_t r = 0; r < one.rows.size(); ++r) {
    for (Dimension d : kDimensions) EXPECT_EQ(*one.rows[r].dims[index(d)], *three.rows[r].dims[index(d)]);
  }
}
