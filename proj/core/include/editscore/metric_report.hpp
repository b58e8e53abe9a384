#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "editscore/calibration.hpp"
#include "editscore/correlation.hpp"
#include "editscore/dataset.hpp"
#include "editscore/types.hpp"

namespace editscore {

// One (judge, column) row. Unavailable metrics are empty, never zero.
struct MetricCell {
  std::size_t n = 0;
  std::optional<double> srcc;
  std::optional<double> krcc;
  std::optional<double> plcc;
  std::optional<double> rmse;
  std::optional<CalibrationParams> fit;
  std::optional<AffineMap> affine;  // set when fit_status is "linear_limit"
  // "ok", "max_iter", "degenerate", "linear_limit" or "unavailable".
  std::string fit_status = "unavailable";
  std::string note;
};

struct MetricReport {
  std::string judge_id;
  PerColumn<MetricCell> cells;

  const MetricCell& operator[](Column c) const noexcept { return cells[index(c)]; }
};

struct MetricOptions {
  SrccMode srcc_mode = SrccMode::kMidRankPearson;
  LogisticFitOptions fit;
};

// SRCC/KRCC on raw predictions; PLCC/RMSE after logistic calibration.
// Overall compares the per-sample human mean with the mean of the judge's
// available dimension scores (or its native scalar when it has none).
MetricReport metric_report(const EvalTable& table, std::string_view judge_id,
                           const MetricOptions& options = {});

// Same computation on explicit lists; exposed for callers without a table.
MetricCell metric_cell(std::span<const double> pred, std::span<const double> human,
                       const MetricOptions& options = {});

}  // namespace editscore
