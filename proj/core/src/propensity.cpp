#include "editscore/propensity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>

namespace editscore {

namespace {

double logistic(double eta) noexcept {
  if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

const ItemCovariates& covariates_for(const ItemIndex& items, const std::string& item_id) {
  const ItemCovariates* item = items.find(item_id);
  if (item == nullptr) fail(ErrorKind::kPrecondition, "propensity: no covariates for item '" + item_id + "'");
  return *item;
}

void moments(const std::vector<double>& v, double& mean, double& sd) {
  mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(v.size()));
}

struct NewtonResult {
  Eigen::VectorXd beta;
  int iterations = 0;
  bool converged = false;
  bool boundary = false;  // some fitted probability numerically 0 or 1
};

// Newton-Raphson for the (optionally ridge-penalized) logistic log-likelihood.
// Column 0 of x is the unpenalized intercept.
NewtonResult newton(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double ridge,
                    const PropensityOptions& options) {
  const Eigen::Index k = x.cols();
  NewtonResult r;
  r.beta = Eigen::VectorXd::Zero(k);
  const double mean_y = y.mean();
  r.beta[0] = std::log(mean_y / (1.0 - mean_y));
  Eigen::VectorXd penalty = Eigen::VectorXd::Constant(k, ridge);
  penalty[0] = 0.0;
  for (r.iterations = 0; r.iterations < options.max_iterations; ++r.iterations) {
    const Eigen::VectorXd eta = x * r.beta;
    Eigen::VectorXd p(eta.size()), w(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      p[i] = logistic(eta[i]);
      w[i] = std::max(p[i] * (1.0 - p[i]), 1e-12);
    }
    const Eigen::VectorXd grad = x.transpose() * (y - p) - penalty.cwiseProduct(r.beta);
    Eigen::MatrixXd hess = x.transpose() * w.asDiagonal() * x;
    hess.diagonal() += penalty;
    hess.diagonal().array() += 1e-10;
    const Eigen::VectorXd step = hess.ldlt().solve(grad);
    if (!step.allFinite()) break;
    r.beta += step;
    if (step.cwiseAbs().maxCoeff() < options.tolerance * (1.0 + r.beta.cwiseAbs().maxCoeff())) {
      r.converged = true;
      ++r.iterations;
      break;
    }
  }
  const Eigen::VectorXd eta = x * r.beta;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    const double p = logistic(eta[i]);
    if (p < 1e-8 || p > 1.0 - 1e-8) r.boundary = true;
  }
  return r;
}

}  // namespace

std::vector<double> PropensityModel::features(const std::string& system_id,
                                              const ItemCovariates& item) const {
  std::vector<double> f;
  f.reserve(names_.size());
  for (std::size_t s = 1; s < systems_.size(); ++s) f.push_back(systems_[s] == system_id ? 1.0 : 0.0);
  for (std::size_t t = 1; t < task_types_.size(); ++t) {
    f.push_back(task_types_[t] == item.task_type ? 1.0 : 0.0);
  }
  if (length_sd_ > 0.0) {
    f.push_back((static_cast<double>(item.prompt_length) - length_mean_) / length_sd_);
  }
  if (constraint_sd_ > 0.0) {
    f.push_back((static_cast<double>(item.constraint_count) - constraint_mean_) / constraint_sd_);
  }
  return f;
}

double PropensityModel::probability(const std::string& system_id, const ItemCovariates& item) const {
  if (saturated_) return 1.0;
  const auto f = features(system_id, item);
  double eta = intercept_;
  for (std::size_t j = 0; j < f.size(); ++j) eta += coef_[j] * f[j];
  return logistic(eta);
}

PropensityModel fit_propensity(std::span<const Observation> rows, const ItemIndex& items,
                               const PropensityOptions& options) {
  if (rows.empty()) fail(ErrorKind::kPrecondition, "propensity: no observation rows");
  PropensityModel m;
  std::size_t observed = 0;
  for (const auto& r : rows) {
    covariates_for(items, r.item_id);
    if (r.observed) ++observed;
  }
  if (observed == 0) fail(ErrorKind::kPrecondition, "propensity: no observed rows");
  if (observed == rows.size()) {
    m.saturated_ = true;
    return m;
  }

  std::set<std::string> systems, task_types;
  std::set<std::string> seen_items;
  std::vector<double> lengths, constraints;
  for (const auto& r : rows) {
    systems.insert(r.system_id);
    const auto& item = covariates_for(items, r.item_id);
    if (seen_items.insert(r.item_id).second) {
      lengths.push_back(static_cast<double>(item.prompt_length));
      constraints.push_back(static_cast<double>(item.constraint_count));
    }
  }
  m.systems_.assign(systems.begin(), systems.end());
  // Task levels in vocabulary order, restricted to those present.
  for (const auto& level : items.vocabulary()) {
    for (const auto& item_id : seen_items) {
      if (items.find(item_id)->task_type == level) {
        m.task_types_.push_back(level);
        break;
      }
    }
  }
  moments(lengths, m.length_mean_, m.length_sd_);
  moments(constraints, m.constraint_mean_, m.constraint_sd_);
  for (std::size_t s = 1; s < m.systems_.size(); ++s) m.names_.push_back("system=" + m.systems_[s]);
  for (std::size_t t = 1; t < m.task_types_.size(); ++t) m.names_.push_back("task_type=" + m.task_types_[t]);
  if (m.length_sd_ > 0.0) m.names_.push_back("prompt_length(std)");
  if (m.constraint_sd_ > 0.0) m.names_.push_back("constraint_count(std)");

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto k = static_cast<Eigen::Index>(m.names_.size()) + 1;
  Eigen::MatrixXd x(n, k);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    const auto f = m.features(r.system_id, covariates_for(items, r.item_id));
    x(i, 0) = 1.0;
    for (std::size_t j = 0; j < f.size(); ++j) x(i, static_cast<Eigen::Index>(j) + 1) = f[j];
    y[i] = r.observed ? 1.0 : 0.0;
  }

  NewtonResult fit = newton(x, y, 0.0, options);
  if (!fit.converged || fit.boundary) {
    m.separation_ = true;
    m.ridge_ = options.fallback_ridge;
    fit = newton(x, y, m.ridge_, options);
    if (!fit.converged) fail(ErrorKind::kNumeric, "propensity: ridge-penalized fit did not converge");
  }
  m.iterations_ = fit.iterations;
  m.intercept_ = fit.beta[0];
  m.coef_.assign(fit.beta.data() + 1, fit.beta.data() + fit.beta.size());
  return m;
}

double clipped_inverse(double propensity, double clip_floor) {
  if (!(clip_floor > 0.0 && clip_floor < 1.0)) {
    fail(ErrorKind::kPrecondition, "ipw: clip_floor must lie in (0, 1)");
  }
  if (!(propensity >= 0.0 && propensity <= 1.0)) fail(ErrorKind::kRange, "ipw: propensity outside [0, 1]");
  return 1.0 / std::max(propensity, clip_floor);
}

std::vector<double> ipw_weights(const PropensityModel& model, std::span<const Observation> rows,
                                const ItemIndex& items, double clip_floor) {
  if (!(clip_floor > 0.0 && clip_floor < 1.0)) {
    fail(ErrorKind::kPrecondition, "ipw: clip_floor must lie in (0, 1)");
  }
  std::vector<double> w(rows.size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].observed) continue;
    w[i] = clipped_inverse(model.probability(rows[i].system_id, covariates_for(items, rows[i].item_id)),
                           clip_floor);
  }
  return w;
}

}  // namespace editscore
