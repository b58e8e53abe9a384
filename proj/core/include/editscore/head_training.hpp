#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "editscore/ordinal_head.hpp"

namespace editscore {

struct TrainConfig {
  std::size_t hidden = 64;
  std::size_t epochs = 60;
  std::size_t batch_size = 16;
  double learning_rate = 0.05;
  double momentum = 0.9;
  std::uint64_t seed = 17;
  LossNormalization normalization = LossNormalization::kAllThresholds;
};

struct TrainResult {
  OrdinalHeadParams params;
  double initial_loss = 0.0;  // mean loss over the dataset at initialization
  double final_loss = 0.0;
  std::vector<double> epoch_losses;  // mean minibatch loss per epoch
};

// Minibatch SGD with momentum, equal weight on the three dimensions. The seed
// drives initialization and the per-epoch shuffle; runs are bit-reproducible.
TrainResult train(std::span<const TrainingExample> dataset, const TrainConfig& config);

// Hard-score accuracy per dimension.
PerDimension<double> hard_accuracy(const OrdinalHeadParams& params, std::span<const TrainingExample> data,
                                   ThresholdMode mode = ThresholdMode::kConditional);

using GradientFn = std::function<void(const OrdinalHeadParams&, std::span<const TrainingExample>,
                                      OrdinalHeadParams&)>;

struct GradCheckResult {
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
  std::size_t coordinates = 0;
  // The gradient is numerically zero everywhere; judge by absolute error.
  bool absolute_criterion = false;
};

// Compares an analytic gradient of the mean loss (the built-in backward pass
// unless `analytic` is given) with central differences on every coordinate,
// or on `max_coordinates` evenly spaced ones when the head is larger.
// Relative error per coordinate is |a - f| / max(|a|, |f|, 1e-6).
GradCheckResult grad_check(const OrdinalHeadParams& params, std::span<const TrainingExample> batch,
                           double epsilon = 1e-5,
                           LossNormalization norm = LossNormalization::kAllThresholds,
                           const GradientFn& analytic = {}, std::size_t max_coordinates = 0);

}  // namespace editscore
