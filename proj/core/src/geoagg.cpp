#include "editscore/geoagg.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace editscore {

GeoWeights::GeoWeights(double a, double b, double c) : alpha(a), beta(b), gamma(c) {
  for (double w : {a, b, c}) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      fail(ErrorKind::kPrecondition, "geoagg weights must be finite and > 0");
    }
  }
}

double normalize_unit(double score) {
  if (!(score >= SoftScore::kMin && score <= SoftScore::kMax)) {
    fail(ErrorKind::kRange, "normalize_unit: score " + std::to_string(score) + " outside [1, 4]");
  }
  return (score - 1.0) / 3.0;
}

double geoagg_sample(const SoftTriplet& scores, const GeoWeights& w) {
  const double i = normalize_unit(scores[Dimension::kIF].value());
  const double r = normalize_unit(scores[Dimension::kRQ].value());
  const double e = normalize_unit(scores[Dimension::kEE].value());
  if (i == 0.0 || r == 0.0 || e == 0.0) return 1.0;
  const double total = w.total();
  // Product of per-dimension factors keeps each power in [0, 1].
  const double g = std::pow(i, w.alpha / total) * std::pow(r, w.beta / total) *
                   std::pow(e, w.gamma / total);
  return std::clamp(1.0 + 3.0 * g, 1.0, 4.0);
}

double geoagg_model(std::span<const SoftTriplet> samples, const GeoWeights& weights) {
  if (samples.empty()) fail(ErrorKind::kPrecondition, "geoagg_model: no samples");
  double sum = 0.0;
  for (const auto& s : samples) sum += geoagg_sample(s, weights);
  return sum / static_cast<double>(samples.size());
}

MeanOverall mean_overall_model(std::span<const SoftTriplet> samples) {
  if (samples.empty()) fail(ErrorKind::kPrecondition, "mean_overall_model: no samples");
  MeanOverall m;
  for (const auto& s : samples) {
    for (Dimension d : kDimensions) m.dims[index(d)] += s[d].value();
  }
  const auto n = static_cast<double>(samples.size());
  for (auto& v : m.dims) v /= n;
  m.overall = (m.dims[0] + m.dims[1] + m.dims[2]) / 3.0;
  return m;
}

std::vector<std::string> benchmark_items(const EvalTable& table) {
  std::vector<std::string> out;
  if (!table.items().empty()) {
    for (const auto& item : table.items().items()) out.push_back(item.item_id);
  } else {
    for (const auto& [group, members] : table.groups()) out.push_back(group);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LeaderboardRow> leaderboard(const EvalTable& table, const ScoreSource& source,
                                        const GeoWeights& weights) {
  std::map<std::string, std::vector<SoftTriplet>> by_system;
  std::map<std::string, std::set<std::string>> items_by_system;
  for (const auto& s : scored_samples(table, source)) {
    by_system[s.system_id].push_back(s.scores);
    items_by_system[s.system_id].insert(s.group_id);
  }
  const auto universe = benchmark_items(table);
  std::vector<LeaderboardRow> rows;
  for (const auto& [system, triplets] : by_system) {
    LeaderboardRow row;
    row.system_id = system;
    row.geoagg = geoagg_model(triplets, weights);
    row.mean = mean_overall_model(triplets);
    row.n = triplets.size();
    row.total_items = universe.size();
    for (const auto& item : universe) {
      if (items_by_system[system].contains(item)) ++row.observed_items;
    }
    row.partial_coverage = row.observed_items < row.total_items;
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const LeaderboardRow& a, const LeaderboardRow& b) {
    return a.geoagg > b.geoagg;
  });
  return rows;
}

std::vector<TaskRow> leaderboard_by_task(const EvalTable& table, const ScoreSource& source,
                                         const GeoWeights& weights) {
  std::map<std::pair<std::string, std::string>, std::vector<SoftTriplet>> cells;
  for (const auto& s : scored_samples(table, source)) {
    const ItemCovariates* item = table.items().find(s.group_id);
    if (item == nullptr) continue;
    cells[{s.system_id, item->task_type}].push_back(s.scores);
  }
  std::vector<TaskRow> out;
  for (const auto& [key, triplets] : cells) {
    out.push_back(TaskRow{key.first, key.second, geoagg_model(triplets, weights), triplets.size()});
  }
  return out;
}

}  // namespace editscore
