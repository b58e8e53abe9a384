#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace editscore {

// q(x) = beta1 * (1/2 - 1 / (1 + exp(beta2 * (x - beta3)))) + beta4
struct CalibrationParams {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;
  double beta4 = 0.0;

  double operator()(double x) const noexcept;
};

enum class FitStatus {
  kConverged,
  kMaxIterations,  // best iterate kept
  kDegenerate,     // slope collapsed or no better than a constant; identity calibration used
  kLinearLimit,    // the affine beta2 -> 0 limit beats every finite iterate; `affine` holds it
};

std::string_view to_string(FitStatus status) noexcept;

struct LogisticFitOptions {
  int max_iterations = 200;
  double relative_tolerance = 1e-10;
};

struct AffineMap {
  double intercept = 0.0;
  double slope = 0.0;
};

struct LogisticFit {
  CalibrationParams params;
  std::vector<double> calibrated;  // q(pred_i)
  std::optional<AffineMap> affine;  // set with kLinearLimit
  double sse = 0.0;
  double baseline_sse = 0.0;  // sum of squares around mean(human)
  int iterations = 0;
  FitStatus status = FitStatus::kConverged;
};

// Damped Gauss-Newton (Levenberg-Marquardt) least squares with the analytic
// Jacobian of q. Requires n >= 5 and non-constant predictions.
LogisticFit fit_logistic_4p(std::span<const double> pred, std::span<const double> human,
                            const LogisticFitOptions& options = {});

struct PlccRmse {
  double plcc = 0.0;
  double rmse = 0.0;
  LogisticFit fit;
};

// PLCC and RMSE between calibrated predictions and human scores. A degenerate
// fit falls back to the raw predictions and keeps the degenerate status.
PlccRmse plcc_rmse(std::span<const double> pred, std::span<const double> human,
                   const LogisticFitOptions& options = {});

double rmse(std::span<const double> x, std::span<const double> y);

}  // namespace editscore
