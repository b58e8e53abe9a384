#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "editscore/preference.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace editscore;

TEST(PairScore, PaperRules) {
  EXPECT_EQ(pair_score(4, 3, 0.9, 0.2), 1.0);
  EXPECT_EQ(pair_score(3, 3, 0.9, 0.2), 1.0);
  EXPECT_EQ(pair_score(3, 3, 0.2, 0.2), 1.0);
  EXPECT_EQ(pair_score(4, 2, 1.5, 1.5), 0.5);
  EXPECT_EQ(pair_score(4, 2, 1.0, 3.0), 0.0);
  EXPECT_EQ(pair_score(4, 2, 1.50, 1.55, 0.1), 0.5);
  EXPECT_THROW(pair_score(4, 2, 1, 2, -0.1), Error);
}

RankingGroup group(std::string id, std::vector<std::pair<double, double>> hp) {
  RankingGroup g{std::move(id), {}};
  for (std::size_t i = 0; i < hp.size(); ++i) g.members.push_back({g.group_id + std::to_string(i), hp[i].first, hp[i].second});
  return g;
}

TEST(PairwiseAccuracy, Examples) {
  const std::vector<RankingGroup> perfect{group("a", {{1, 0.1}, {2, 0.2}, {3, 0.3}})};
  EXPECT_EQ(pairwise_accuracy(perfect), 1.0);
  const std::vector<RankingGroup> mixed{group("a", {{1, 0.1}, {2, 0.2}, {3, 0.3}}), group("b", {{1, 0.9}, {2, 0.1}})};
  EXPECT_EQ(pairwise_accuracy(mixed), 0.75);
  const auto detail = pairwise_accuracy_detail(mixed);
  EXPECT_EQ(detail.pairs, 4u);
  EXPECT_EQ(detail.groups, 2u);
}

TEST(PairwiseAccuracy, Preconditions) {
  EXPECT_THROW(pairwise_accuracy(std::vector<RankingGroup>{}), Error);
  EXPECT_THROW(pairwise_accuracy(std::vector<RankingGroup>{group("a", {{1, 1}})}), Error);
}

TEST(PairwiseAccuracy, ReversingJudgeEarnsOnlyHumanTies) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<RankingGroup> gs;
    std::size_t ties = 0, pairs = 0;
    for (int g = 0; g < 4; ++g) {
      std::vector<std::pair<double, double>> hp;
      for (int m = 0; m < 4; ++m) {
        const double h = 1 + static_cast<double>(rng.index(4));
        hp.push_back({h, -h});
      }
      for (std::size_t i = 0; i < hp.size(); ++i) {
        for (std::size_t j = i + 1; j < hp.size(); ++j) {
          ++pairs;
          if (hp[i].first == hp[j].first) ++ties;
        }
      }
      gs.push_back(group("g" + std::to_string(g), hp));
    }
    EXPECT_DOUBLE_EQ(pairwise_accuracy(gs), static_cast<double>(ties) / static_cast<double>(pairs));
  }
}

TEST(PairwiseAccuracy, InvariantUnderMonotoneTransformAndGroupOrder) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    std::vector<RankingGroup> gs;
    for (int g = 0; g < 5; ++g) {
      std::vector<std::pair<double, double>> hp;
      const int m = 2 + static_cast<int>(rng.index(4));
      for (int i = 0; i < m; ++i) hp.push_back({1 + static_cast<double>(rng.index(4)), rng.uniform(1, 4)});
      gs.push_back(group("g" + std::to_string(g), hp));
    }
    const double base = pairwise_accuracy(gs);
    auto transformed = gs;
    for (auto& g : transformed) {
      for (auto& m : g.members) m.pred = std::exp(3 * m.pred);
    }
    EXPECT_EQ(pairwise_accuracy(transformed), base);
    auto shuffled = gs;
    rng.shuffle(std::span<RankingGroup>(shuffled));
    for (std::size_t i = 0; i < shuffled.size(); ++i) shuffled[i].group_id = "renamed" + std::to_string(i);
    EXPECT_EQ(pairwise_accuracy(shuffled), base);
    EXPECT_GE(base, 0.0);
    EXPECT_LE(base, 1.0);
  }
}

namespace {

EvalTable grouped_table(std::uint64_t seed, bool constant_judge) {
  Rng rng(seed);
  std::vector<AnnotationRecord> ann;
  std::vector<PredictionRecord> pred;
  int id = 0;
  for (int g = 0; g < 10; ++g) {
    const int m = 2 + static_cast<int>(rng.index(3));
    for (int i = 0; i < m; ++i, ++id) {
      const std::string s = "s" + std::to_string(id);
      const int a = constant_judge ? 1 + i : 1 + static_cast<int>(rng.index(4));
      const int b = constant_judge ? 1 + i : 1 + static_cast<int>(rng.index(4));
      const int c = constant_judge ? 1 + i : 1 + static_cast<int>(rng.index(4));
      ann.push_back(fixtures::annotation(s, "g" + std::to_string(g), "m" + std::to_string(i), a, b, c));
      if (constant_judge) {
        pred.push_back(fixtures::prediction(s, "m" + std::to_string(i), "j", 2.5, 2.5, 2.5));
      } else {
        pred.push_back(fixtures::prediction(s, "m" + std::to_string(i), "j", rng.uniform(1, 4), rng.uniform(1, 4),
                                            std::round(rng.uniform(1, 4))));
      }
    }
  }
  return validate_dataset(ann, pred);
}

}  // namespace

TEST(PerDimensionPairacc, HumanLabelsAsJudgeScorePerfect) {
  const auto table = grouped_table(5, false);
  std::vector<PredictionRecord> as_judge;
  for (const auto& s : table.samples()) {
    as_judge.push_back(fixtures::prediction(s.sample_id, s.system_id, "h", s.labels[Dimension::kIF].value(),
                                            s.labels[Dimension::kRQ].value(), s.labels[Dimension::kEE].value()));
  }
  const auto t2 = validate_dataset(table.annotations(), as_judge);
  for (const auto& v : per_dimension_pairacc(t2, "h")) EXPECT_EQ(*v, 1.0);
}

TEST(PerDimensionPairacc, ConstantJudgeOnUntiedHumansScoresHalf) {
  for (const auto& v : per_dimension_pairacc(grouped_table(6, true), "j")) EXPECT_EQ(*v, 0.5);
}

TEST(PerDimensionPairacc, MatchesBruteForceEnumeration) {
  for (std::uint64_t seed = 10; seed < 20; ++seed) {
    const auto table = grouped_table(seed, false);
    const auto acc = per_dimension_pairacc(table, "j");
    for (Column col : kColumns) {
      std::vector<std::vector<oracle::Member>> groups;
      for (const auto& [gid, members] : table.groups()) {
        std::vector<oracle::Member> g;
        for (std::size_t s : members) {
          const auto& lab = table.samples()[s].labels;
          const auto* p = table.prediction(s, "j");
          if (col == Column::kOverall) {
            g.push_back({static_cast<double>(lab[Dimension::kIF].value() + lab[Dimension::kRQ].value() +
                                             lab[Dimension::kEE].value()),
                         p->overall_prediction()});
          } else {
            const auto d = static_cast<Dimension>(index(col));
            g.push_back({static_cast<double>(lab[d].value()), *p->dimension(d)});
          }
        }
        groups.push_back(g);
      }
      EXPECT_NEAR(*acc[index(col)], oracle::pair_accuracy(groups, 0.0), 1e-12);
    }
  }
}

TEST(PerDimensionPairacc, ScalarJudgeHasOnlyOverall) {
  std::vector<AnnotationRecord> ann{fixtures::annotation("a", "g", "m", 4, 3, 3),
                                    fixtures::annotation("b", "g", "n", 3, 4, 3)};
  std::vector<PredictionRecord> pred{fixtures::scalar_prediction("a", "m", "s", 3.0),
                                     fixtures::scalar_prediction("b", "n", "s", 2.0)};
  const auto acc = per_dimension_pairacc(validate_dataset(ann, pred), "s");
  EXPECT_FALSE(acc[0].has_value());
  // (4,3,3) and (3,4,3) tie exactly on Overall, so the pair earns credit.
  EXPECT_EQ(*acc[3], 1.0);
}
