#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "editscore/dataset.hpp"
#include "editscore/types.hpp"

namespace editscore {

// Exponents of the weighted geometric aggregate for IF, RQ and EE. Only their
// ratios matter.
struct GeoWeights {
  double alpha = 2.0;
  double beta = 1.0;
  double gamma = 1.0;

  GeoWeights() = default;
  GeoWeights(double a, double b, double c);

  double total() const noexcept { return alpha + beta + gamma; }
};

// (score - 1) / 3, mapping [1, 4] onto [0, 1].
double normalize_unit(double score);

// 1 + 3 * (i^alpha r^beta e^gamma)^(1 / (alpha + beta + gamma)) on normalized
// scores. A dimension at the floor (0) drives the sample to 1.
double geoagg_sample(const SoftTriplet& scores, const GeoWeights& weights = {});

// Mean of per-sample aggregates. Aggregating per-dimension means instead
// would overrate unbalanced systems.
double geoagg_model(std::span<const SoftTriplet> samples, const GeoWeights& weights = {});

struct MeanOverall {
  double overall = 0.0;
  PerDimension<double> dims{};
};

MeanOverall mean_overall_model(std::span<const SoftTriplet> samples);

struct LeaderboardRow {
  std::string system_id;
  double geoagg = 0.0;
  MeanOverall mean;
  std::size_t n = 0;
  std::size_t observed_items = 0;
  std::size_t total_items = 0;
  bool partial_coverage = false;
};

// Items a leaderboard is measured against: the items file when loaded,
// otherwise every ranking group in the table.
std::vector<std::string> benchmark_items(const EvalTable& table);

// One row per system with at least one full soft triplet, ordered by GeoAgg
// descending then system_id.
std::vector<LeaderboardRow> leaderboard(const EvalTable& table, const ScoreSource& source,
                                        const GeoWeights& weights = {});

struct TaskRow {
  std::string system_id;
  std::string task_type;
  double geoagg = 0.0;
  std::size_t n = 0;
};

// Per-system GeoAgg broken down by the item's task_type. Samples whose group
// has no covariates are skipped.
std::vector<TaskRow> leaderboard_by_task(const EvalTable& table, const ScoreSource& source,
                                         const GeoWeights& weights = {});

}  // namespace editscore
