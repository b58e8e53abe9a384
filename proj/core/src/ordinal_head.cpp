#include "editscore/ordinal_head.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "editscore/error.hpp"
#include "editscore/rng.hpp"

namespace editscore {

namespace {

constexpr const char* kFormat = "editscore.ordinal_head";
constexpr int kVersion = 1;

// log(1 + exp(z)) without overflow.
double softplus(double z) noexcept { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

// Number of thresholds k in {1,2,3} with label >= k, i.e. the active set.
int active_thresholds(OrdinalScore label) noexcept { return std::min(label.value(), static_cast<int>(kThresholds)); }

double divisor(OrdinalScore label, LossNormalization norm) noexcept {
  return norm == LossNormalization::kAllThresholds ? static_cast<double>(kThresholds)
                                                   : static_cast<double>(active_thresholds(label));
}

}  // namespace

OrdinalHeadParams::OrdinalHeadParams(std::size_t input_dim, std::size_t hidden)
    : input_dim_(input_dim),
      hidden_(hidden),
      values_(hidden * input_dim + hidden * (1 + kNumDimensions) + kThresholds * hidden + kThresholds, 0.0) {
  if (input_dim == 0 || hidden == 0) fail(ErrorKind::kPrecondition, "ordinal head: dimensions must be > 0");
}

OrdinalHeadParams OrdinalHeadParams::zeros(std::size_t input_dim, std::size_t hidden) {
  return OrdinalHeadParams(input_dim, hidden);
}

OrdinalHeadParams OrdinalHeadParams::random(std::size_t input_dim, std::size_t hidden, std::uint64_t seed) {
  OrdinalHeadParams p(input_dim, hidden);
  Rng rng(seed);
  const double w1_sd = 1.0 / std::sqrt(static_cast<double>(input_dim));
  const double w2_sd = 1.0 / std::sqrt(static_cast<double>(hidden));
  for (double& v : p.w1()) v = rng.normal(0.0, w1_sd);
  for (Dimension d : kDimensions) {
    for (double& v : p.query(d)) v = rng.normal(1.0, 0.1);
  }
  for (double& v : p.w2()) v = rng.normal(0.0, w2_sd);
  return p;
}

std::string OrdinalHeadParams::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["input_dim"] = input_dim_;
  j["hidden"] = hidden_;
  j["w1"] = std::vector<double>(w1().begin(), w1().end());
  j["b1"] = std::vector<double>(b1().begin(), b1().end());
  for (Dimension d : kDimensions) {
    j["query_" + std::string(to_string(d))] = std::vector<double>(query(d).begin(), query(d).end());
  }
  j["w2"] = std::vector<double>(w2().begin(), w2().end());
  j["b2"] = std::vector<double>(b2().begin(), b2().end());
  return j.dump() + "\n";
}

OrdinalHeadParams OrdinalHeadParams::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kParse, std::string("head params: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormat) fail(ErrorKind::kSchema, "head params: unknown format");
    if (j.at("version").get<int>() != kVersion) fail(ErrorKind::kSchema, "head params: unsupported version");
    OrdinalHeadParams p(j.at("input_dim").get<std::size_t>(), j.at("hidden").get<std::size_t>());
    auto load = [&](const char* key, std::span<double> dst) {
      const auto v = j.at(key).get<std::vector<double>>();
      if (v.size() != dst.size()) {
        fail(ErrorKind::kSchema, std::string("head params: '") + key + "' has wrong length");
      }
      std::copy(v.begin(), v.end(), dst.begin());
    };
    load("w1", p.w1());
    load("b1", p.b1());
    for (Dimension d : kDimensions) load(("query_" + std::string(to_string(d))).c_str(), p.query(d));
    load("w2", p.w2());
    load("b2", p.b2());
    for (double v : p.values()) {
      if (!std::isfinite(v)) fail(ErrorKind::kRange, "head params: non-finite value");
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kSchema, std::string("head params: ") + e.what());
  }
}

HeadOutput forward(const OrdinalHeadParams& params, std::span<const double> x) {
  const std::size_t dim = params.input_dim(), hid = params.hidden();
  if (x.size() != dim) {
    fail(ErrorKind::kPrecondition, "forward: feature length " + std::to_string(x.size()) +
                                       " does not match head input " + std::to_string(dim));
  }
  const auto w1 = params.w1();
  const auto b1 = params.b1();
  const auto w2 = params.w2();
  const auto b2 = params.b2();
  std::vector<double> h(hid);
  for (std::size_t j = 0; j < hid; ++j) {
    double a = b1[j];
    for (std::size_t i = 0; i < dim; ++i) a += w1[j * dim + i] * x[i];
    h[j] = std::tanh(a);
  }
  HeadOutput out{};
  std::vector<double> t(hid);
  for (Dimension d : kDimensions) {
    const auto q = params.query(d);
    for (std::size_t j = 0; j < hid; ++j) t[j] = h[j] * q[j];
    for (std::size_t k = 0; k < kThresholds; ++k) {
      double z = b2[k];
      for (std::size_t j = 0; j < hid; ++j) z += w2[k * hid + j] * t[j];
      out[index(d)][k] = z;
    }
  }
  return out;
}

double sigmoid(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::array<double, kThresholds> cumulative_probabilities(const ThresholdLogits& logits, ThresholdMode mode) {
  std::array<double, kThresholds> p{};
  double running = 1.0;
  for (std::size_t k = 0; k < kThresholds; ++k) {
    const double s = sigmoid(logits[k]);
    if (mode == ThresholdMode::kConditional) {
      running *= s;
      p[k] = running;
    } else {
      p[k] = s;
    }
  }
  return p;
}

SoftScore soft_score(const ThresholdLogits& logits, ThresholdMode mode) {
  const auto p = cumulative_probabilities(logits, mode);
  double s = 1.0;
  for (double v : p) s += v;
  return SoftScore(std::clamp(s, SoftScore::kMin, SoftScore::kMax));
}

OrdinalScore hard_score_from_cumulative(const std::array<double, kThresholds>& cumulative) {
  int score = 1;
  for (double v : cumulative) {
    if (v > 0.5) ++score;
  }
  return OrdinalScore(score);
}

OrdinalScore hard_score(const ThresholdLogits& logits, ThresholdMode mode) {
  return hard_score_from_cumulative(cumulative_probabilities(logits, mode));
}

double corn_loss(const ThresholdLogits& logits, OrdinalScore label, LossNormalization norm) {
  double loss = 0.0;
  const int active = active_thresholds(label);
  for (int k = 1; k <= active; ++k) {
    const double z = logits[static_cast<std::size_t>(k - 1)];
    const double target = label.value() > k ? 1.0 : 0.0;
    loss += softplus(z) - target * z;
  }
  return loss / divisor(label, norm);
}

double corn_loss(const HeadOutput& logits, const OrdinalTriplet& labels, LossNormalization norm) {
  double loss = 0.0;
  for (Dimension d : kDimensions) loss += corn_loss(logits[index(d)], labels[d], norm);
  return loss;
}

double loss_and_gradient(const OrdinalHeadParams& params, std::span<const TrainingExample> batch,
                         LossNormalization norm, OrdinalHeadParams* gradient) {
  if (batch.empty()) fail(ErrorKind::kPrecondition, "loss: empty batch");
  const std::size_t dim = params.input_dim(), hid = params.hidden();
  if (gradient != nullptr) *gradient = OrdinalHeadParams::zeros(dim, hid);
  const double scale = 1.0 / static_cast<double>(batch.size());
  const auto w1 = params.w1();
  const auto b1 = params.b1();
  const auto w2 = params.w2();
  const auto b2 = params.b2();

  std::vector<double> h(hid), t(hid), dt(hid), dh(hid);
  double total = 0.0;
  for (const auto& ex : batch) {
    if (ex.x.size() != dim) fail(ErrorKind::kPrecondition, "loss: feature length mismatch for '" + ex.sample_id + "'");
    for (std::size_t j = 0; j < hid; ++j) {
      double a = b1[j];
      for (std::size_t i = 0; i < dim; ++i) a += w1[j * dim + i] * ex.x[i];
      h[j] = std::tanh(a);
    }
    std::fill(dh.begin(), dh.end(), 0.0);
    for (Dimension d : kDimensions) {
      const auto q = params.query(d);
      for (std::size_t j = 0; j < hid; ++j) t[j] = h[j] * q[j];
      ThresholdLogits z{};
      for (std::size_t k = 0; k < kThresholds; ++k) {
        double v = b2[k];
        for (std::size_t j = 0; j < hid; ++j) v += w2[k * hid + j] * t[j];
        z[k] = v;
      }
      const OrdinalScore label = ex.labels[d];
      total += corn_loss(z, label, norm);
      if (gradient == nullptr) continue;

      const double inv = scale / divisor(label, norm);
      std::fill(dt.begin(), dt.end(), 0.0);
      const int active = active_thresholds(label);
      for (int k = 1; k <= active; ++k) {
        const auto kk = static_cast<std::size_t>(k - 1);
        const double target = label.value() > k ? 1.0 : 0.0;
        const double g = (sigmoid(z[kk]) - target) * inv;
        gradient->b2()[kk] += g;
        auto gw2 = gradient->w2();
        for (std::size_t j = 0; j < hid; ++j) {
          gw2[kk * hid + j] += g * t[j];
          dt[j] += g * w2[kk * hid + j];
        }
      }
      auto gq = gradient->query(d);
      for (std::size_t j = 0; j < hid; ++j) {
        gq[j] += dt[j] * h[j];
        dh[j] += dt[j] * q[j];
      }
    }
    if (gradient == nullptr) continue;
    auto gw1 = gradient->w1();
    auto gb1 = gradient->b1();
    for (std::size_t j = 0; j < hid; ++j) {
      const double dpre = dh[j] * (1.0 - h[j] * h[j]);
      if (dpre == 0.0) continue;
      gb1[j] += dpre;
      for (std::size_t i = 0; i < dim; ++i) gw1[j * dim + i] += dpre * ex.x[i];
    }
  }
  return total * scale;
}

}  // namespace editscore
