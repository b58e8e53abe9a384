#include "editscore/head_training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "editscore/error.hpp"
#include "editscore/rng.hpp"

namespace editscore {

TrainResult train(std::span<const TrainingExample> dataset, const TrainConfig& config) {
  if (dataset.empty()) fail(ErrorKind::kPrecondition, "train: empty dataset");
  if (config.batch_size == 0) fail(ErrorKind::kPrecondition, "train: batch_size must be > 0");
  const std::size_t dim = dataset.front().x.size();
  for (const auto& ex : dataset) {
    if (ex.x.size() != dim) fail(ErrorKind::kPrecondition, "train: feature length mismatch at '" + ex.sample_id + "'");
  }

  TrainResult result;
  Rng rng(config.seed);
  const auto init_seed = static_cast<std::uint64_t>(rng.uniform() * 0x1.0p53);
  result.params = OrdinalHeadParams::random(dim, config.hidden, init_seed);
  result.initial_loss = loss_and_gradient(result.params, dataset, config.normalization, nullptr);

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> velocity(result.params.size(), 0.0);
  std::vector<TrainingExample> batch;
  OrdinalHeadParams grad;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      batch.clear();
      for (std::size_t k = start; k < end; ++k) batch.push_back(dataset[order[k]]);
      const double loss = loss_and_gradient(result.params, batch, config.normalization, &grad);
      if (!std::isfinite(loss)) {
        std::string ids;
        for (const auto& ex : batch) ids += (ids.empty() ? "" : ",") + ex.sample_id;
        fail(ErrorKind::kNumeric, "train: non-finite loss in epoch " + std::to_string(epoch) + ", batch " +
                                      std::to_string(batches) + " [" + ids + "]");
      }
      auto values = result.params.values();
      const auto g = grad.values();
      for (std::size_t i = 0; i < values.size(); ++i) {
        velocity[i] = config.momentum * velocity[i] - config.learning_rate * g[i];
        values[i] += velocity[i];
      }
      epoch_loss += loss;
      ++batches;
    }
    result.epoch_losses.push_back(epoch_loss / static_cast<double>(batches));
  }
  result.final_loss = loss_and_gradient(result.params, dataset, config.normalization, nullptr);
  return result;
}

PerDimension<double> hard_accuracy(const OrdinalHeadParams& params, std::span<const TrainingExample> data,
                                   ThresholdMode mode) {
  if (data.empty()) fail(ErrorKind::kPrecondition, "accuracy: empty dataset");
  PerDimension<double> correct{};
  for (const auto& ex : data) {
    const HeadOutput out = forward(params, ex.x);
    for (Dimension d : kDimensions) {
      if (hard_score(out[index(d)], mode) == ex.labels[d]) correct[index(d)] += 1.0;
    }
  }
  for (auto& c : correct) c /= static_cast<double>(data.size());
  return correct;
}

GradCheckResult grad_check(const OrdinalHeadParams& params, std::span<const TrainingExample> batch,
                           double epsilon, LossNormalization norm, const GradientFn& analytic,
                           std::size_t max_coordinates) {
  if (!(epsilon > 1e-7 && epsilon < 1e-3)) fail(ErrorKind::kPrecondition, "grad_check: epsilon outside (1e-7, 1e-3)");
  OrdinalHeadParams grad;
  if (analytic) {
    grad = OrdinalHeadParams::zeros(params.input_dim(), params.hidden());
    analytic(params, batch, grad);
  } else {
    loss_and_gradient(params, batch, norm, &grad);
  }

  std::vector<std::size_t> coords(params.size());
  std::iota(coords.begin(), coords.end(), 0);
  if (max_coordinates > 0 && max_coordinates < coords.size()) {
    std::vector<std::size_t> picked;
    for (std::size_t k = 0; k < max_coordinates; ++k) picked.push_back(k * coords.size() / max_coordinates);
    coords = std::move(picked);
  }

  GradCheckResult r;
  r.coordinates = coords.size();
  OrdinalHeadParams probe = params;
  std::vector<double> analytic_vals, numeric_vals;
  double largest = 0.0;
  for (std::size_t c : coords) {
    const double saved = probe.values()[c];
    probe.values()[c] = saved + epsilon;
    const double up = loss_and_gradient(probe, batch, norm, nullptr);
    probe.values()[c] = saved - epsilon;
    const double down = loss_and_gradient(probe, batch, norm, nullptr);
    probe.values()[c] = saved;
    const double numeric = (up - down) / (2.0 * epsilon);
    const double a = grad.values()[c];
    analytic_vals.push_back(a);
    numeric_vals.push_back(numeric);
    largest = std::max({largest, std::abs(a), std::abs(numeric)});
  }
  r.absolute_criterion = largest < 1e-8;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const double a = analytic_vals[k], f = numeric_vals[k];
    const double abs_err = std::abs(a - f);
    r.max_absolute_error = std::max(r.max_absolute_error, abs_err);
    r.max_relative_error =
        std::max(r.max_relative_error, abs_err / std::max({std::abs(a), std::abs(f), 1e-6}));
  }
  return r;
}

}  // namespace editscore
