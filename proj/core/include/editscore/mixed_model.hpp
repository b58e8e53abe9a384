#pragma once

#include <map>
#include <span>
#include <string>

namespace editscore {

// One observed score: system m on item i with weight w.
struct MixedRow {
  std::string system_id;
  std::string item_id;
  double y = 0.0;
  double w = 1.0;
};

struct MixedModelOptions {
  int max_iterations = 500;
  // Stop when |delta loglik| <= tolerance * max(1, |loglik|).
  double tolerance = 1e-8;
};

// y = mu_system + u_item + e, u ~ N(0, sigma_u2), Var(e_row) = sigma_e2 / w_row.
struct MixedModelFit {
  std::map<std::string, double> mu;
  std::map<std::string, double> u_hat;
  double sigma_u2 = 0.0;
  double sigma_e2 = 0.0;
  double log_likelihood = 0.0;  // restricted log-likelihood, up to a constant
  bool converged = false;
  int iterations = 0;
};

// Weighted linear mixed model with a random item intercept. Each iteration
// solves the mixed-model equations for mu (GLS) and u (empirical Bayes) given
// the variance components, then updates the components by REML expectation-
// maximization. Weights are rescaled to mean 1 internally, so multiplying all
// of them by a constant leaves mu and u unchanged.
//
// Requires >= 2 systems and >= 2 items, and a connected system-item design.
MixedModelFit fit_mixed_weighted(std::span<const MixedRow> rows, const MixedModelOptions& options = {});

}  // namespace editscore
