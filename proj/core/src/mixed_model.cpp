#include "editscore/mixed_model.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "editscore/error.hpp"

namespace editscore {

namespace {

struct Design {
  std::vector<std::string> systems;
  std::vector<std::string> items;
  std::vector<std::size_t> sys;   // per row
  std::vector<std::size_t> item;  // per row
  std::vector<double> y;
  std::vector<double> w;  // rescaled to mean 1
  double weight_scale = 1.0;
  double offset = 0.0;  // weighted mean of y, removed before fitting
  std::vector<std::vector<std::size_t>> item_rows;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

Design build_design(std::span<const MixedRow> rows) {
  Design d;
  std::map<std::string, std::size_t> sys_index, item_index;
  for (const auto& r : rows) {
    if (!std::isfinite(r.y)) fail(ErrorKind::kPrecondition, "mixed model: non-finite y");
    if (!(r.w > 0.0) || !std::isfinite(r.w)) {
      fail(ErrorKind::kPrecondition, "mixed model: weights must be finite and > 0");
    }
    sys_index.emplace(r.system_id, 0);
    item_index.emplace(r.item_id, 0);
  }
  if (sys_index.size() < 2) fail(ErrorKind::kPrecondition, "mixed model: need >= 2 systems");
  if (item_index.size() < 2) fail(ErrorKind::kPrecondition, "mixed model: need >= 2 items");
  for (auto& [name, idx] : sys_index) {
    idx = d.systems.size();
    d.systems.push_back(name);
  }
  for (auto& [name, idx] : item_index) {
    idx = d.items.size();
    d.items.push_back(name);
  }
  d.item_rows.resize(d.items.size());
  double wsum = 0.0;
  for (const auto& r : rows) wsum += r.w;
  d.weight_scale = wsum / static_cast<double>(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    d.sys.push_back(sys_index[r.system_id]);
    d.item.push_back(item_index[r.item_id]);
    d.y.push_back(r.y);
    d.w.push_back(r.w / d.weight_scale);
    d.item_rows[d.item.back()].push_back(k);
    d.offset += d.w.back() * r.y;
  }
  // Centering makes shifts of y exact shifts of mu, whatever the stopping point.
  d.offset /= static_cast<double>(rows.size());
  for (double& y : d.y) y -= d.offset;

  // Systems and items must form one connected bipartite design.
  const std::size_t p = d.systems.size();
  std::vector<std::size_t> parent(p + d.items.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t k = 0; k < d.y.size(); ++k) {
    parent[find_root(parent, d.sys[k])] = find_root(parent, p + d.item[k]);
  }
  const std::size_t root = find_root(parent, 0);
  for (std::size_t s = 1; s < p; ++s) {
    if (find_root(parent, s) != root) {
      fail(ErrorKind::kSingularDesign,
           "mixed model: system '" + d.systems[s] +
               "' shares no item path with the others; system contrasts are unidentifiable");
    }
  }
  if (d.y.size() <= p) fail(ErrorKind::kPrecondition, "mixed model: need more rows than systems");
  return d;
}

// Quantities derived from one value of the variance components.
struct Evaluation {
  Eigen::VectorXd mu;
  Eigen::VectorXd u;
  double trace_cuu = 0.0;  // sum of diag of C_uu (per unit sigma_e2)
  double weighted_sse = 0.0;
  double log_likelihood = 0.0;
  // d loglik / d sigma_u2 at sigma_u2 = 0; only set on the boundary.
  double boundary_score = 0.0;
};

Evaluation evaluate(const Design& d, double sigma_u2, double sigma_e2) {
  const auto p = static_cast<Eigen::Index>(d.systems.size());
  const auto q = static_cast<Eigen::Index>(d.items.size());
  const std::size_t n = d.y.size();
  Evaluation ev;
  ev.u = Eigen::VectorXd::Zero(q);

  Eigen::VectorXd xtw = Eigen::VectorXd::Zero(p);  // diag of X'WX
  Eigen::VectorXd xtwy = Eigen::VectorXd::Zero(p);
  double log_det_v = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    xtw[static_cast<Eigen::Index>(d.sys[k])] += d.w[k];
    xtwy[static_cast<Eigen::Index>(d.sys[k])] += d.w[k] * d.y[k];
    log_det_v += std::log(sigma_e2 / d.w[k]);
  }

  Eigen::MatrixXd s = xtw.asDiagonal();
  Eigen::VectorXd rhs = xtwy;
  const bool random_effect = sigma_u2 > 0.0;
  const double lambda = random_effect ? sigma_e2 / sigma_u2 : 0.0;
  std::vector<Eigen::VectorXd> a(static_cast<std::size_t>(q));
  std::vector<double> dd(static_cast<std::size_t>(q), 0.0), zy(static_cast<std::size_t>(q), 0.0);
  if (random_effect) {
    for (Eigen::Index i = 0; i < q; ++i) {
      auto& ai = a[static_cast<std::size_t>(i)];
      ai = Eigen::VectorXd::Zero(p);
      double wi = 0.0;
      for (std::size_t k : d.item_rows[static_cast<std::size_t>(i)]) {
        ai[static_cast<Eigen::Index>(d.sys[k])] += d.w[k];
        wi += d.w[k];
        zy[static_cast<std::size_t>(i)] += d.w[k] * d.y[k];
      }
      const double di = wi + lambda;
      dd[static_cast<std::size_t>(i)] = di;
      s.noalias() -= (ai * ai.transpose()) / di;
      rhs.noalias() -= ai * (zy[static_cast<std::size_t>(i)] / di);
      log_det_v += std::log(di / lambda);
    }
  }
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(s);
  if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() <= 0.0).any()) {
    fail(ErrorKind::kNumeric, "mixed model: mixed-model equations are not positive definite");
  }
  ev.mu = ldlt.solve(rhs);
  const Eigen::MatrixXd s_inv = ldlt.solve(Eigen::MatrixXd::Identity(p, p));
  const double log_det_s = ldlt.vectorD().array().log().sum();

  if (random_effect) {
    for (Eigen::Index i = 0; i < q; ++i) {
      const auto& ai = a[static_cast<std::size_t>(i)];
      const double di = dd[static_cast<std::size_t>(i)];
      ev.u[i] = (zy[static_cast<std::size_t>(i)] - ai.dot(ev.mu)) / di;
      const Eigen::VectorXd bi = ai / di;
      ev.trace_cuu += 1.0 / di + bi.dot(s_inv * bi);
    }
  }

  double quad = 0.0;  // r' V^-1 r, r = y - X mu
  std::vector<double> item_wr(static_cast<std::size_t>(q), 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = d.y[k] - ev.mu[static_cast<Eigen::Index>(d.sys[k])];
    const double e = r - ev.u[static_cast<Eigen::Index>(d.item[k])];
    quad += d.w[k] * r * r;
    item_wr[d.item[k]] += d.w[k] * r;
    ev.weighted_sse += d.w[k] * e * e;
  }
  if (random_effect) {
    for (std::size_t i = 0; i < item_wr.size(); ++i) quad -= item_wr[i] * item_wr[i] / dd[i];
  } else {
    double fit_term = 0.0, trace_term = 0.0;
    for (std::size_t i = 0; i < item_wr.size(); ++i) {
      fit_term += item_wr[i] * item_wr[i];
      double wi = 0.0;
      Eigen::VectorXd ai = Eigen::VectorXd::Zero(p);
      for (std::size_t k : d.item_rows[i]) {
        ai[static_cast<Eigen::Index>(d.sys[k])] += d.w[k];
        wi += d.w[k];
      }
      trace_term += wi - ai.cwiseProduct(ai).cwiseQuotient(xtw).sum();
    }
    ev.boundary_score = 0.5 / sigma_e2 * (fit_term / sigma_e2 - trace_term);
  }
  quad /= sigma_e2;
  ev.log_likelihood = -0.5 * (log_det_v + log_det_s - static_cast<double>(p) * std::log(sigma_e2) + quad);
  return ev;
}

}  // namespace

MixedModelFit fit_mixed_weighted(std::span<const MixedRow> rows, const MixedModelOptions& options) {
  const Design d = build_design(rows);
  const std::size_t n = d.y.size();
  const auto p = static_cast<double>(d.systems.size());
  const auto q = static_cast<double>(d.items.size());

  // Start from weighted per-system means and moment estimates.
  std::vector<double> sys_w(d.systems.size(), 0.0), sys_wy(d.systems.size(), 0.0);
  double wsum = 0.0, wy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sys_w[d.sys[k]] += d.w[k];
    sys_wy[d.sys[k]] += d.w[k] * d.y[k];
    wsum += d.w[k];
    wy += d.w[k] * d.y[k];
  }
  double var_y = 0.0;
  for (std::size_t k = 0; k < n; ++k) var_y += d.w[k] * (d.y[k] - wy / wsum) * (d.y[k] - wy / wsum);
  var_y /= wsum;
  std::vector<double> item_w(d.items.size(), 0.0), item_wr(d.items.size(), 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = d.y[k] - sys_wy[d.sys[k]] / sys_w[d.sys[k]];
    item_w[d.item[k]] += d.w[k];
    item_wr[d.item[k]] += d.w[k] * r;
  }
  double mean_m = 0.0;
  for (std::size_t i = 0; i < item_w.size(); ++i) mean_m += item_wr[i] / item_w[i];
  mean_m /= q;
  double sigma_u2 = 0.0;
  for (std::size_t i = 0; i < item_w.size(); ++i) {
    const double m = item_wr[i] / item_w[i] - mean_m;
    sigma_u2 += m * m;
  }
  sigma_u2 /= q;
  double sigma_e2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = d.y[k] - sys_wy[d.sys[k]] / sys_w[d.sys[k]] - item_wr[d.item[k]] / item_w[d.item[k]];
    sigma_e2 += d.w[k] * r * r;
  }
  sigma_e2 /= static_cast<double>(n);

  const double e_floor = var_y > 0.0 ? 1e-8 * var_y : 1e-300;
  sigma_e2 = std::max(sigma_e2, e_floor);
  sigma_u2 = std::max(sigma_u2, 1e-3 * sigma_e2);

  MixedModelFit fit;
  Evaluation ev = evaluate(d, sigma_u2, sigma_e2);
  double previous = ev.log_likelihood;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const double lambda = sigma_u2 > 0.0 ? sigma_e2 / sigma_u2 : 0.0;
    const double next_u2 = (ev.u.squaredNorm() + sigma_e2 * ev.trace_cuu) / q;
    const double next_e2 =
        (ev.weighted_sse + sigma_e2 * (p + (sigma_u2 > 0.0 ? q - lambda * ev.trace_cuu : 0.0))) /
        static_cast<double>(n);
    sigma_e2 = std::max(next_e2, e_floor);
    // Projected onto the boundary once the item variance is negligible.
    sigma_u2 = next_u2 > 1e-12 * sigma_e2 ? next_u2 : 0.0;
    ev = evaluate(d, sigma_u2, sigma_e2);
    if (sigma_u2 > 0.0) {
      // EM approaches sigma_u2 = 0 only sublinearly. Jump when the boundary
      // has the higher likelihood and satisfies the first-order condition.
      const double boundary_e2 =
          std::max(evaluate(d, 0.0, 1.0).weighted_sse / (static_cast<double>(n) - p), e_floor);
      Evaluation boundary = evaluate(d, 0.0, boundary_e2);
      if (boundary.log_likelihood >= ev.log_likelihood && boundary.boundary_score <= 0.0) {
        sigma_u2 = 0.0;
        sigma_e2 = boundary_e2;
        ev = std::move(boundary);
      }
    }
    fit.iterations = it;
    const double change = std::abs(ev.log_likelihood - previous);
    previous = ev.log_likelihood;
    if (change <= options.tolerance * std::max(1.0, std::abs(ev.log_likelihood))) {
      fit.converged = true;
      break;
    }
  }

  for (std::size_t s = 0; s < d.systems.size(); ++s) fit.mu[d.systems[s]] = ev.mu[static_cast<Eigen::Index>(s)] + d.offset;
  for (std::size_t i = 0; i < d.items.size(); ++i) fit.u_hat[d.items[i]] = ev.u[static_cast<Eigen::Index>(i)];
  fit.sigma_u2 = sigma_u2;
  // Back to the caller's weight units: Var(e) = sigma_e2 / w.
  fit.sigma_e2 = sigma_e2 * d.weight_scale;
  fit.log_likelihood = ev.log_likelihood;
  return fit;
}

}  // namespace editscore
