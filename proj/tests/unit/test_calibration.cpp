#include <gtest/gtest.h>

#include <cmath>

#include "editscore/calibration.hpp"
#include <algorithm>
#include "editscore/correlation.hpp"
#include "editscore/error.hpp"
#include "editscore/rng.hpp"
#include "oracles.hpp"

using namespace editscore;
using V = std::vector<double>;

namespace {

void synth(double b1, double b2, double b3, double b4, V& pred, V& human, int n = 40) {
  pred.clear();
  human.clear();
  for (int i = 0; i < n; ++i) {
    const double x = 0.5 + 3.0 * i / (n - 1);
    pred.push_back(x);
    human.push_back(oracle::logistic_4p(x, b1, b2, b3, b4));
  }
}

}  // namespace

TEST(Logistic4p, RecoversNoiselessCurve) {
  V pred, human;
  synth(3, 1, 2, 2.5, pred, human);
  const auto fit = fit_logistic_4p(pred, human);
  EXPECT_EQ(fit.status, FitStatus::kConverged);
  EXPECT_LT(oracle::rmse(fit.calibrated, human), 1e-6);
  for (std::size_t i = 0; i < pred.size(); ++i) EXPECT_NEAR(fit.params(pred[i]), fit.calibrated[i], 1e-15);
}

TEST(Logistic4p, AntitoneDataIsAbsorbedBySlopeSign) {
  V pred, human;
  synth(2.5, -2.0, 2.2, 2.0, pred, human);
  const auto r = plcc_rmse(pred, human);
  EXPECT_GT(r.plcc, 1 - 1e-9);
  EXPECT_LT(r.rmse, 1e-6);
}

TEST(Logistic4p, CalibrationDoesNotHurtIdentity) {
  const V pred{1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  const auto r = plcc_rmse(pred, pred);
  EXPECT_LE(r.rmse, rmse(pred, pred) + 1e-12);
  EXPECT_EQ(r.fit.status, FitStatus::kLinearLimit);
  ASSERT_TRUE(r.fit.affine.has_value());
  EXPECT_NEAR(r.fit.affine->slope, 1.0, 1e-12);
}

TEST(Logistic4p, Preconditions) {
  EXPECT_THROW(fit_logistic_4p(V{1, 2, 3}, V{1, 2, 3}), Error);
  EXPECT_THROW(fit_logistic_4p(V{2, 2, 2, 2, 2}, V{1, 2, 3, 4, 1}), Error);
  EXPECT_THROW(plcc_rmse(V{1, 2, 3, 4, 5}, V{3, 3, 3, 3, 3}), Error);
}

TEST(Logistic4p, NoImprovementOverConstantIsDegenerate) {
  // Symmetric around the centre: no monotone curve beats the mean.
  const V pred{1, 2, 3, 4, 5}, human{1, 3, 4, 3, 1};
  const auto r = plcc_rmse(pred, human);
  if (r.fit.status == FitStatus::kDegenerate) {
    EXPECT_EQ(r.fit.calibrated, pred);
  } else {
    EXPECT_LT(r.fit.sse, r.fit.baseline_sse);
  }
  EXPECT_TRUE(std::isfinite(r.plcc));
}

TEST(Logistic4p, PlccAtLeastRawPearsonOnMonotoneData) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    V pred, human;
    for (int i = 0; i < 30; ++i) {
      const double x = rng.uniform(1, 4);
      pred.push_back(x);
      human.push_back(std::clamp(1.0 + 3.0 / (1.0 + std::exp(-2.5 * (x - 2.5))) + rng.normal(0, 0.2), 1.0, 4.0));
    }
    const auto r = plcc_rmse(pred, human);
    EXPECT_GE(r.plcc, std::abs(pearson(pred, human)) - 1e-3);
  }
}

TEST(Logistic4p, IterationCapKeepsBestIterate) {
  V pred, human;
  synth(3, 1, 2, 2.5, pred, human);
  LogisticFitOptions opts;
  opts.max_iterations = 1;
  const auto fit = fit_logistic_4p(pred, human, opts);
  EXPECT_EQ(fit.status, FitStatus::kMaxIterations);
  EXPECT_LE(fit.sse, fit.baseline_sse);
}
