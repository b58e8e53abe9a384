#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "editscore/dataset.hpp"
#include "editscore/mixed_model.hpp"
#include "editscore/propensity.hpp"

namespace editscore {

struct AdjustOptions {
  double clip_floor = 0.05;
  MixedModelOptions mixed;
  PropensityOptions propensity;
};

struct AdjustedRow {
  std::string system_id;
  PerDimension<std::optional<double>> dims;
  std::optional<double> overall_mean;  // mean of the three adjusted dimensions
  PerDimension<double> naive{};        // plain mean over observed samples
  std::size_t n = 0;
  std::size_t observed_items = 0;
  std::size_t total_items = 0;
  bool adjusted = false;  // partial coverage: estimates carry the coverage correction
};

struct DimensionFit {
  std::optional<MixedModelFit> fit;
  std::string error;  // set when the fit failed
};

struct AdjustedLeaderboard {
  std::vector<AdjustedRow> rows;  // system_id order
  PerDimension<DimensionFit> fits;
  std::optional<PropensityModel> propensity;  // fitted only when some system is partial
  std::vector<std::string> notes;
};

// Coverage-adjusted per-system IF/RQ/EE: a propensity model over partially
// covered systems gives clipped inverse-propensity weights (fully covered
// systems keep weight 1), then one weighted mixed-model fit per dimension
// with benchmark item = ranking group.
AdjustedLeaderboard adjusted_leaderboard(const EvalTable& table, const ScoreSource& source,
                                         const AdjustOptions& options = {});

}  // namespace editscore
