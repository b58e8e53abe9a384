#include "editscore/types.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace editscore {

std::string_view to_string(Dimension d) noexcept {
  switch (d) {
    case Dimension::kIF: return "IF";
    case Dimension::kRQ: return "RQ";
    case Dimension::kEE: return "EE";
  }
  return "?";
}

std::optional<Dimension> parse_dimension(std::string_view name) noexcept {
  for (Dimension d : kDimensions) {
    if (to_string(d) == name) return d;
  }
  return std::nullopt;
}

std::string_view to_string(Column c) noexcept {
  if (c == Column::kOverall) return "Overall";
  return to_string(static_cast<Dimension>(index(c)));
}

OrdinalScore::OrdinalScore(int value) : value_(value) {
  if (value < kMin || value > kMax) {
    fail(ErrorKind::kRange, "ordinal score " + std::to_string(value) + " outside {1,2,3,4}");
  }
}

SoftScore::SoftScore(double value) : value_(value) {
  if (!(value >= kMin && value <= kMax)) {
    fail(ErrorKind::kRange, "soft score " + std::to_string(value) + " outside [1, 4]");
  }
}

SoftTriplet to_soft(const OrdinalTriplet& labels) noexcept {
  return SoftTriplet(labels[Dimension::kIF], labels[Dimension::kRQ], labels[Dimension::kEE]);
}

int overall_thirds(const OrdinalTriplet& labels) noexcept {
  return labels[Dimension::kIF].value() + labels[Dimension::kRQ].value() +
         labels[Dimension::kEE].value();
}

SoftScore overall_human(const OrdinalTriplet& labels) noexcept {
  return SoftScore(static_cast<double>(overall_thirds(labels)) / 3.0);
}

SoftScore overall_human(const SoftTriplet& scores) noexcept {
  const double sum = scores[Dimension::kIF].value() + scores[Dimension::kRQ].value() +
                     scores[Dimension::kEE].value();
  return SoftScore(std::clamp(sum / 3.0, SoftScore::kMin, SoftScore::kMax));
}

Decimal Decimal::from_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  std::string text(buf, end);
  // JSON numbers need a fraction or exponent to stay floats on re-read.
  if (text.find_first_of(".eEn") == std::string::npos) text += ".0";
  return Decimal{std::move(text), v};
}

bool PredictionRecord::scalar_only() const noexcept {
  for (const auto& d : dims) {
    if (d) return false;
  }
  return true;
}

bool PredictionRecord::has_full_triplet() const noexcept {
  for (const auto& d : dims) {
    if (!d) return false;
  }
  return true;
}

std::optional<double> PredictionRecord::dimension(Dimension d) const noexcept {
  const auto& v = dims[index(d)];
  if (!v) return std::nullopt;
  return v->value;
}

std::optional<SoftTriplet> PredictionRecord::triplet() const {
  if (!has_full_triplet()) return std::nullopt;
  return SoftTriplet(SoftScore(dims[0]->value), SoftScore(dims[1]->value),
                     SoftScore(dims[2]->value));
}

double PredictionRecord::overall_prediction() const noexcept {
  double sum = 0.0;
  int count = 0;
  for (const auto& d : dims) {
    if (d) {
      sum += d->value;
      ++count;
    }
  }
  if (count > 0) return sum / count;
  return overall ? overall->value : std::nan("");
}

const std::vector<std::string>& default_task_vocabulary() {
  static const std::vector<std::string> vocabulary{
      "camera_angle", "instance_motion", "quantity", "camera_motion", "attribute",
      "creative",     "instance",        "visual_effect", "style",
  };
  return vocabulary;
}

}  // namespace editscore
