#include <gtest/gtest.h>

#include "editscore/agreement.hpp"
#include "fixtures.hpp"

using namespace editscore;

namespace {
RatingPair rp(int a, int b) { return {OrdinalScore(a), OrdinalScore(b)}; }
}  // namespace

TEST(Agreement, Examples) {
  const std::vector<RatingPair> same{rp(1, 1), rp(4, 4)};
  EXPECT_EQ(agreement(same).exact_pct, 100.0);
  EXPECT_EQ(agreement(same).within1_pct, 100.0);
  const std::vector<RatingPair> two{rp(4, 2), rp(3, 3)};
  EXPECT_EQ(agreement(two).exact_pct, 50.0);
  EXPECT_EQ(agreement(two).within1_pct, 50.0);
  EXPECT_THROW(agreement(std::vector<RatingPair>{}), Error);
}

TEST(Agreement, OneDecimalFormatting) {
  EXPECT_EQ(format_percent(75.2727), "75.3");
  EXPECT_EQ(format_percent(100.0), "100.0");
}

TEST(Agreement, RaterPairsFromTable) {
  std::vector<AnnotationRecord> ann;
  auto add = [&](const char* s, const char* r, int a, int b, int c) {
    auto rec = fixtures::annotation(s, "g", "m", a, b, c);
    rec.rater_id = r;
    ann.push_back(rec);
  };
  add("s1", "r1", 4, 3, 2);
  add("s1", "r2", 4, 1, 3);
  add("s2", "r1", 2, 2, 2);
  add("s2", "r2", 3, 2, 4);
  add("s3", "r1", 1, 1, 1);
  const auto agr = rater_agreement(validate_dataset(ann, {}));
  EXPECT_EQ(agr[0].n, 2u);
  EXPECT_EQ(agr[0].exact_pct, 50.0);
  EXPECT_EQ(agr[0].within1_pct, 100.0);
  EXPECT_EQ(agr[1].exact_pct, 50.0);
  EXPECT_EQ(agr[1].within1_pct, 50.0);
  EXPECT_EQ(agr[2].exact_pct, 0.0);
  EXPECT_EQ(agr[2].within1_pct, 50.0);
}

TEST(Agreement, ThreeRatersRejected) {
  std::vector<AnnotationRecord> ann;
  for (const char* r : {"r1", "r2", "r3"}) {
    auto rec = fixtures::annotation("s1", "g", "m", 2, 2, 2);
    rec.rater_id = r;
    ann.push_back(rec);
  }
  EXPECT_THROW(rater_agreement(validate_dataset(ann, {})), Error);
}
