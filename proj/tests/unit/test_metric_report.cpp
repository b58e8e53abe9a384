#include <gtest/gtest.h>

#include <cmath>

#include "editscore/calibration.hpp"
#include "editscore/metric_report.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace editscore;

namespace {

EvalTable synthetic_table(bool identity) {
  Rng rng(11);
  std::vector<AnnotationRecord> ann;
  std::vector<PredictionRecord> pred;
  for (int i = 0; i < 20; ++i) {
    const int a = 1 + static_cast<int>(rng.index(4)), b = 1 + static_cast<int>(rng.index(4)),
              c = 1 + static_cast<int>(rng.index(4));
    const std::string id = "s" + std::to_string(i);
    ann.push_back(fixtures::annotation(id, "g" + std::to_string(i / 4), "m", a, b, c));
    auto distort = [&](int v) { return std::clamp(1.0 + 3.0 * std::pow((v - 1) / 3.0, 1.7) + rng.normal(0, 0.3), 1.0, 4.0); };
    if (identity) {
      pred.push_back(fixtures::prediction(id, "m", "j", a, b, c));
    } else {
      pred.push_back(fixtures::prediction(id, "m", "j", distort(a), distort(b), distort(c)));
    }
    pred.push_back(fixtures::scalar_prediction(id, "m", "scalar", std::clamp((a + b + c) / 3.0 + rng.normal(0, 0.4), 1.0, 4.0)));
  }
  return validate_dataset(ann, pred);
}

}  // namespace

TEST(MetricReport, IdentityJudgeIsPerfect) {
  const auto rep = metric_report(synthetic_table(true), "j");
  for (Column c : kColumns) {
    EXPECT_DOUBLE_EQ(*rep[c].srcc, 1.0);
    EXPECT_DOUBLE_EQ(*rep[c].krcc, 1.0);
    EXPECT_EQ(rep[c].n, 20u);
  }
}

TEST(MetricReport, ScalarOnlyJudgeHasOnlyOverall) {
  const auto rep = metric_report(synthetic_table(false), "scalar");
  for (Dimension d : kDimensions) {
    EXPECT_FALSE(rep[column(d)].srcc.has_value());
    EXPECT_EQ(rep[column(d)].fit_status, "unavailable");
  }
  EXPECT_TRUE(rep[Column::kOverall].srcc.has_value());
  EXPECT_TRUE(rep[Column::kOverall].plcc.has_value());
}

TEST(MetricReport, MatchesDirectFormulas) {
  const auto table = synthetic_table(false);
  const auto rep = metric_report(table, "j");
  for (Column col : kColumns) {
    std::vector<double> p, h;
    for (std::size_t s = 0; s < table.samples().size(); ++s) {
      const auto* pr = table.prediction(s, "j");
      const auto& lab = table.samples()[s].labels;
      if (col == Column::kOverall) {
        p.push_back(pr->overall_prediction());
        h.push_back(overall_human(lab).value());
      } else {
        const auto d = static_cast<Dimension>(index(col));
        p.push_back(*pr->dimension(d));
        h.push_back(lab[d].value());
      }
    }
    EXPECT_NEAR(*rep[col].srcc, oracle::spearman(p, h), 1e-9);
    EXPECT_NEAR(*rep[col].krcc, oracle::kendall_tau_b(p, h), 1e-9);
    const auto& f = *rep[col].fit;
    std::vector<double> q;
    for (double x : p) {
      q.push_back(rep[col].affine ? rep[col].affine->intercept + rep[col].affine->slope * x
                                  : oracle::logistic_4p(x, f.beta1, f.beta2, f.beta3, f.beta4));
    }
    if (rep[col].fit_status != "degenerate") {
      EXPECT_NEAR(*rep[col].plcc, oracle::pearson(q, h), 1e-9);
      EXPECT_NEAR(*rep[col].rmse, oracle::rmse(q, h), 1e-9);
    }
  }
}

TEST(MetricReport, SmallSamplesAreUnavailableNotZero) {
  std::vector<AnnotationRecord> ann{fixtures::annotation("a", "g", "m", 1, 2, 3),
                                    fixtures::annotation("b", "g", "m", 2, 3, 4)};
  std::vector<PredictionRecord> pred{fixtures::prediction("a", "m", "j", 1, 2, 3),
                                     fixtures::prediction("b", "m", "j", 2, 3, 4)};
  const auto rep = metric_report(validate_dataset(ann, pred), "j");
  for (Column c : kColumns) {
    EXPECT_FALSE(rep[c].srcc.has_value());
    EXPECT_EQ(rep[c].n, 2u);
  }
}

TEST(MetricReport, Deterministic) {
  const auto table = synthetic_table(false);
  const auto a = metric_report(table, "j"), b = metric_report(table, "j");
  for (Column c : kColumns) {
    EXPECT_EQ(*a[c].srcc, *b[c].srcc);
    EXPECT_EQ(*a[c].plcc, *b[c].plcc);
    EXPECT_EQ(*a[c].rmse, *b[c].rmse);
  }
}
