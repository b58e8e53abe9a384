#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "editscore/dataset.hpp"

namespace editscore {

// Whether a system has an evaluated output for a benchmark item.
struct Observation {
  std::string system_id;
  std::string item_id;
  bool observed = false;
};

struct PropensityOptions {
  int max_iterations = 100;
  double tolerance = 1e-10;
  // Ridge penalty used when the unpenalized fit separates the data.
  double fallback_ridge = 1.0;
};

// Logistic model of Pr(observed | system, item covariates). Features are a
// one-hot system indicator and one-hot task_type (first level dropped as
// reference) plus standardized prompt_length and constraint_count.
class PropensityModel {
 public:
  double probability(const std::string& system_id, const ItemCovariates& item) const;

  const std::vector<std::string>& feature_names() const noexcept { return names_; }
  const std::vector<double>& coefficients() const noexcept { return coef_; }
  double intercept() const noexcept { return intercept_; }
  // Penalty actually used: 0 unless separation forced the ridge fallback.
  double ridge_penalty() const noexcept { return ridge_; }
  bool separation_detected() const noexcept { return separation_; }
  // Every row observed: the model predicts 1 everywhere.
  bool saturated() const noexcept { return saturated_; }
  int iterations() const noexcept { return iterations_; }

  friend PropensityModel fit_propensity(std::span<const Observation> rows, const ItemIndex& items,
                                        const PropensityOptions& options);

 private:
  std::vector<double> features(const std::string& system_id, const ItemCovariates& item) const;

  std::vector<std::string> systems_;     // levels; systems_[0] is the reference
  std::vector<std::string> task_types_;  // levels; task_types_[0] is the reference
  double length_mean_ = 0.0, length_sd_ = 0.0;
  double constraint_mean_ = 0.0, constraint_sd_ = 0.0;
  std::vector<std::string> names_;
  std::vector<double> coef_;
  double intercept_ = 0.0;
  double ridge_ = 0.0;
  bool separation_ = false;
  bool saturated_ = false;
  int iterations_ = 0;
};

// Maximum-likelihood logistic fit by Newton-Raphson. Falls back to a
// ridge-penalized fit when fitted probabilities hit 0 or 1.
PropensityModel fit_propensity(std::span<const Observation> rows, const ItemIndex& items,
                               const PropensityOptions& options = {});

// w = 1 / max(p, clip_floor) for each observed row; unobserved rows get 0.
std::vector<double> ipw_weights(const PropensityModel& model, std::span<const Observation> rows,
                                const ItemIndex& items, double clip_floor = 0.05);

double clipped_inverse(double propensity, double clip_floor);

}  // namespace editscore
