#include "editscore/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "editscore/correlation.hpp"
#include "editscore/error.hpp"

namespace editscore {

namespace {

// 1 / (1 + exp(t)), saturating cleanly at both ends.
double falling_logistic(double t) noexcept {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

double median(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  const std::size_t n = s.size();
  return n % 2 == 1 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

double sum_squares(std::span<const double> pred, std::span<const double> human,
                   const CalibrationParams& p) {
  double sse = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double r = p(pred[i]) - human[i];
    sse += r * r;
  }
  return sse;
}

using Vec4 = Eigen::Vector4d;

CalibrationParams from_vec(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
Vec4 to_vec(const CalibrationParams& p) { return {p.beta1, p.beta2, p.beta3, p.beta4}; }

}  // namespace

double CalibrationParams::operator()(double x) const noexcept {
  return beta1 * (0.5 - falling_logistic(beta2 * (x - beta3))) + beta4;
}

std::string_view to_string(FitStatus status) noexcept {
  switch (status) {
    case FitStatus::kConverged: return "ok";
    case FitStatus::kMaxIterations: return "max_iter";
    case FitStatus::kDegenerate: return "degenerate";
    case FitStatus::kLinearLimit: return "linear_limit";
  }
  return "?";
}

LogisticFit fit_logistic_4p(std::span<const double> pred, std::span<const double> human,
                            const LogisticFitOptions& options) {
  if (pred.size() != human.size()) fail(ErrorKind::kPrecondition, "fit_logistic_4p: length mismatch");
  if (pred.size() < 5) {
    fail(ErrorKind::kPrecondition,
         "fit_logistic_4p: need n >= 5, got " + std::to_string(pred.size()));
  }
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (!std::isfinite(pred[i]) || !std::isfinite(human[i])) {
      fail(ErrorKind::kPrecondition, "fit_logistic_4p: non-finite input");
    }
  }
  const auto [pmin, pmax] = std::minmax_element(pred.begin(), pred.end());
  if (*pmin == *pmax) fail(ErrorKind::kPrecondition, "fit_logistic_4p: constant predictions");

  const std::size_t n = pred.size();
  const auto [hmin, hmax] = std::minmax_element(human.begin(), human.end());
  double hmean = 0.0;
  for (double h : human) hmean += h;
  hmean /= static_cast<double>(n);

  LogisticFit fit;
  for (double h : human) fit.baseline_sse += (h - hmean) * (h - hmean);

  double direction = 1.0;
  if (*hmin != *hmax && pearson(pred, human) < 0.0) direction = -1.0;
  CalibrationParams params{*hmax - *hmin, direction, median(pred), hmean};
  double sse = sum_squares(pred, human, params);

  Eigen::MatrixXd jac(n, 4);
  Eigen::VectorXd resid(n);
  double damping = 1e-3;
  fit.status = FitStatus::kMaxIterations;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    if (sse == 0.0) {
      fit.status = FitStatus::kConverged;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double s = falling_logistic(params.beta2 * (pred[i] - params.beta3));
      const double slope = params.beta1 * s * (1.0 - s);  // dq/dt, t = beta2 (x - beta3)
      const auto row = static_cast<Eigen::Index>(i);
      jac(row, 0) = 0.5 - s;
      jac(row, 1) = slope * (pred[i] - params.beta3);
      jac(row, 2) = -slope * params.beta2;
      jac(row, 3) = 1.0;
      resid[row] = params(pred[i]) - human[i];
    }
    const Eigen::Matrix4d jtj = jac.transpose() * jac;
    const Vec4 grad = jac.transpose() * resid;

    bool accepted = false;
    double next_sse = sse;
    CalibrationParams next = params;
    while (damping < 1e16) {
      Eigen::Matrix4d a = jtj;
      for (int k = 0; k < 4; ++k) a(k, k) += damping * std::max(jtj(k, k), 1e-12);
      const Vec4 step = a.ldlt().solve(-grad);
      if (step.allFinite()) {
        next = from_vec(to_vec(params) + step);
        next_sse = sum_squares(pred, human, next);
        if (std::isfinite(next_sse) && next_sse < sse) {
          accepted = true;
          break;
        }
      }
      damping *= 10.0;
    }
    if (!accepted) {
      // No descent direction left at any damping: a stationary point.
      fit.status = FitStatus::kConverged;
      break;
    }
    const double relative_change = (sse - next_sse) / sse;
    params = next;
    sse = next_sse;
    damping = std::max(damping / 10.0, 1e-12);
    if (relative_change < options.relative_tolerance) {
      fit.status = FitStatus::kConverged;
      ++iter;
      break;
    }
  }

  fit.iterations = iter;
  fit.params = params;
  fit.sse = sse;

  // The affine maps are the beta2 -> 0 limit of the family. LM only creeps
  // towards that limit, so it is solved for directly and kept if better.
  double xmean = 0.0;
  for (double x : pred) xmean += x;
  xmean /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (pred[i] - xmean) * (pred[i] - xmean);
    sxy += (pred[i] - xmean) * (human[i] - hmean);
  }
  const double b = sxy / sxx;
  double affine_sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = hmean + b * (pred[i] - xmean) - human[i];
    affine_sse += r * r;
  }
  if (b != 0.0 && affine_sse < sse && affine_sse < fit.baseline_sse) {
    fit.status = FitStatus::kLinearLimit;
    fit.affine = AffineMap{hmean - b * xmean, b};
    fit.sse = affine_sse;
    fit.calibrated.resize(n);
    for (std::size_t i = 0; i < n; ++i) fit.calibrated[i] = hmean + b * (pred[i] - xmean);
    return fit;
  }
  const double slope_span = std::abs(params.beta2) * (*pmax - *pmin);
  const bool flat = !std::isfinite(slope_span) || slope_span < 1e-8 || params.beta1 == 0.0;
  if (flat || fit.baseline_sse == 0.0 || sse >= fit.baseline_sse) {
    fit.status = FitStatus::kDegenerate;
    fit.calibrated.assign(pred.begin(), pred.end());
    return fit;
  }
  fit.calibrated.resize(n);
  for (std::size_t i = 0; i < n; ++i) fit.calibrated[i] = params(pred[i]);
  return fit;
}

double rmse(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) fail(ErrorKind::kPrecondition, "rmse: bad lengths");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s / static_cast<double>(x.size()));
}

PlccRmse plcc_rmse(std::span<const double> pred, std::span<const double> human,
                   const LogisticFitOptions& options) {
  if (!human.empty() && std::all_of(human.begin(), human.end(),
                                    [&](double h) { return h == human.front(); })) {
    fail(ErrorKind::kPrecondition, "plcc: human scores are constant, Pearson undefined");
  }
  PlccRmse out;
  out.fit = fit_logistic_4p(pred, human, options);
  const auto& calibrated = out.fit.calibrated;
  if (std::all_of(calibrated.begin(), calibrated.end(),
                  [&](double c) { return c == calibrated.front(); })) {
    fail(ErrorKind::kNumeric, "plcc: calibrated predictions are constant");
  }
  out.plcc = pearson(calibrated, human);
  out.rmse = rmse(calibrated, human);
  return out;
}

}  // namespace editscore
