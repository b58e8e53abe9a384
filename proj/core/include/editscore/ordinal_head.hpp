#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "editscore/types.hpp"

namespace editscore {

// Logits for the ordered decisions Y > 1, Y > 2, Y > 3.
using ThresholdLogits = std::array<double, OrdinalScore::kLevels - 1>;
using HeadOutput = PerDimension<ThresholdLogits>;

inline constexpr std::size_t kThresholds = OrdinalScore::kLevels - 1;

// How threshold logits map to P(Y > k).
enum class ThresholdMode {
  // sigmoid(z_k) = P(Y > k | Y > k - 1); P(Y > k) is the running product.
  kConditional,
  // sigmoid(z_k) = P(Y > k) directly. Monotonicity is not guaranteed.
  kMarginal,
};

// Divisor of the per-dimension loss.
enum class LossNormalization {
  kAllThresholds,     // always K - 1 = 3
  kActiveThresholds,  // number of thresholds with y >= k
};

// Ordinal scoring head over a fixed-length feature vector:
//   h   = tanh(W1 x + b1)                 shared hidden layer, D -> H
//   t_d = h * q_d                         per-dimension query embedding
//   z_d = W2 t_d + b2                     shared output map, H -> 3 logits
// All parameters live in one flat buffer so optimizers and gradient checks
// can treat them as a single vector.
class OrdinalHeadParams {
 public:
  OrdinalHeadParams() = default;
  OrdinalHeadParams(std::size_t input_dim, std::size_t hidden);

  static OrdinalHeadParams zeros(std::size_t input_dim, std::size_t hidden);
  // W1 ~ N(0, 1/D), q ~ N(1, 0.1^2), W2 ~ N(0, 1/H), biases 0.
  static OrdinalHeadParams random(std::size_t input_dim, std::size_t hidden, std::uint64_t seed);

  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t hidden() const noexcept { return hidden_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  // Row-major H x D.
  std::span<double> w1() noexcept { return slice(0, hidden_ * input_dim_); }
  std::span<const double> w1() const noexcept { return slice(0, hidden_ * input_dim_); }
  std::span<double> b1() noexcept { return slice(b1_offset(), hidden_); }
  std::span<const double> b1() const noexcept { return slice(b1_offset(), hidden_); }
  std::span<double> query(Dimension d) noexcept { return slice(query_offset(d), hidden_); }
  std::span<const double> query(Dimension d) const noexcept { return slice(query_offset(d), hidden_); }
  // Row-major 3 x H.
  std::span<double> w2() noexcept { return slice(w2_offset(), kThresholds * hidden_); }
  std::span<const double> w2() const noexcept { return slice(w2_offset(), kThresholds * hidden_); }
  std::span<double> b2() noexcept { return slice(b2_offset(), kThresholds); }
  std::span<const double> b2() const noexcept { return slice(b2_offset(), kThresholds); }

  bool operator==(const OrdinalHeadParams&) const = default;

  // Versioned JSON; doubles are written in shortest round-trip form, so
  // from_json(to_json(p)) == p bit for bit.
  std::string to_json() const;
  static OrdinalHeadParams from_json(const std::string& text);

 private:
  std::size_t b1_offset() const noexcept { return hidden_ * input_dim_; }
  std::size_t query_offset(Dimension d) const noexcept { return b1_offset() + hidden_ * (1 + index(d)); }
  std::size_t w2_offset() const noexcept { return b1_offset() + hidden_ * (1 + kNumDimensions); }
  std::size_t b2_offset() const noexcept { return w2_offset() + kThresholds * hidden_; }

  std::span<double> slice(std::size_t offset, std::size_t n) noexcept { return {values_.data() + offset, n}; }
  std::span<const double> slice(std::size_t offset, std::size_t n) const noexcept {
    return {values_.data() + offset, n};
  }

  std::size_t input_dim_ = 0;
  std::size_t hidden_ = 0;
  std::vector<double> values_;
};

HeadOutput forward(const OrdinalHeadParams& params, std::span<const double> x);

double sigmoid(double z) noexcept;

std::array<double, kThresholds> cumulative_probabilities(const ThresholdLogits& logits,
                                                         ThresholdMode mode = ThresholdMode::kConditional);

// Expected score 1 + sum_k P(Y > k), in [1, 4].
SoftScore soft_score(const ThresholdLogits& logits, ThresholdMode mode = ThresholdMode::kConditional);

// 1 + |{k : P(Y > k) > 0.5}|.
OrdinalScore hard_score(const ThresholdLogits& logits, ThresholdMode mode = ThresholdMode::kConditional);
OrdinalScore hard_score_from_cumulative(const std::array<double, kThresholds>& cumulative);

// Conditional ordinal loss for one dimension: binary cross-entropy on
// threshold k only when label >= k, target 1[label > k].
double corn_loss(const ThresholdLogits& logits, OrdinalScore label,
                 LossNormalization norm = LossNormalization::kAllThresholds);
// Sum of the per-dimension losses.
double corn_loss(const HeadOutput& logits, const OrdinalTriplet& labels,
                 LossNormalization norm = LossNormalization::kAllThresholds);

struct TrainingExample {
  std::string sample_id;
  std::vector<double> x;
  OrdinalTriplet labels;
};

// Mean corn_loss over the batch. When `gradient` is non-null it is resized
// to match `params` and receives the analytic gradient of the mean loss.
double loss_and_gradient(const OrdinalHeadParams& params, std::span<const TrainingExample> batch,
                         LossNormalization norm, OrdinalHeadParams* gradient);

}  // namespace editscore
