#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "editscore/dataset.hpp"
#include "editscore/types.hpp"

namespace editscore {

struct Agreement {
  double exact_pct = 0.0;    // 100 * |{a == b}| / n
  double within1_pct = 0.0;  // 100 * |{|a - b| <= 1}| / n
  std::size_t n = 0;
};

using RatingPair = std::pair<OrdinalScore, OrdinalScore>;

Agreement agreement(std::span<const RatingPair> pairs);

// Per-dimension agreement over samples with exactly two annotation records.
// Samples with one rater are skipped; more than two is an error.
PerDimension<Agreement> rater_agreement(const EvalTable& table);

// One-decimal percentage text as used in reports.
std::string format_percent(double pct);

}  // namespace editscore
