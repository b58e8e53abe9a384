#include "editscore/adjusted_leaderboard.hpp"

#include <cmath>
#include <map>
#include <set>

#include "editscore/geoagg.hpp"
#include "editscore/parallel.hpp"

namespace editscore {

AdjustedLeaderboard adjusted_leaderboard(const EvalTable& table, const ScoreSource& source,
                                         const AdjustOptions& options) {
  if (!(options.clip_floor > 0.0 && options.clip_floor < 1.0)) {
    fail(ErrorKind::kPrecondition, "adjust: clip_floor must lie in (0, 1)");
  }
  AdjustedLeaderboard out;
  const auto samples = scored_samples(table, source);
  if (samples.empty()) fail(ErrorKind::kPrecondition, "adjust: no full score triplets for " + source.name());
  const auto universe = benchmark_items(table);
  const std::set<std::string> universe_set(universe.begin(), universe.end());

  std::map<std::string, std::set<std::string>> observed;
  std::map<std::string, std::vector<const ScoredSample*>> by_system;
  for (const auto& s : samples) {
    if (!universe_set.contains(s.group_id)) {
      fail(ErrorKind::kPrecondition, "adjust: group '" + s.group_id + "' has no entry in the items file",
           table.annotations()[table.samples()[s.sample].annotation_rows.front()].where);
    }
    observed[s.system_id].insert(s.group_id);
    by_system[s.system_id].push_back(&s);
  }

  std::vector<Observation> coverage;
  for (const auto& [system, items] : observed) {
    if (items.size() == universe.size()) continue;
    for (const auto& item : universe) coverage.push_back(Observation{system, item, items.contains(item)});
  }
  std::map<std::pair<std::string, std::string>, double> weight;
  if (!coverage.empty()) {
    if (table.items().empty()) fail(ErrorKind::kPrecondition, "adjust: partial coverage needs an items file");
    out.propensity = fit_propensity(coverage, table.items(), options.propensity);
    const auto w = ipw_weights(*out.propensity, coverage, table.items(), options.clip_floor);
    for (std::size_t k = 0; k < coverage.size(); ++k) {
      if (coverage[k].observed) weight[{coverage[k].system_id, coverage[k].item_id}] = w[k];
    }
    if (out.propensity->separation_detected()) {
      out.notes.push_back("propensity: separation detected, ridge penalty " +
                          std::to_string(out.propensity->ridge_penalty()) + " applied");
    }
  }

  for (const auto& [system, rows] : by_system) {
    AdjustedRow row;
    row.system_id = system;
    row.n = rows.size();
    row.observed_items = observed[system].size();
    row.total_items = universe.size();
    row.adjusted = row.observed_items < row.total_items;
    for (const ScoredSample* s : rows) {
      for (Dimension d : kDimensions) row.naive[index(d)] += s->scores[d].value();
    }
    for (auto& v : row.naive) v /= static_cast<double>(rows.size());
    out.rows.push_back(std::move(row));
  }

  if (by_system.size() < 2) {
    out.notes.push_back("single system: reporting naive means");
    for (auto& row : out.rows) {
      for (Dimension d : kDimensions) row.dims[index(d)] = row.naive[index(d)];
    }
  } else {
    parallel_for(kNumDimensions, [&](std::size_t di) {
      const Dimension d = kDimensions[di];
      std::vector<MixedRow> rows;
      rows.reserve(samples.size());
      for (const auto& s : samples) {
        auto it = weight.find({s.system_id, s.group_id});
        rows.push_back(MixedRow{s.system_id, s.group_id, s.scores[d].value(),
                                it == weight.end() ? 1.0 : it->second});
      }
      try {
        out.fits[di].fit = fit_mixed_weighted(rows, options.mixed);
      } catch (const Error& e) {
        out.fits[di].error = std::string(to_string(e.kind())) + ": " + e.detail();
      }
    });
    for (auto& row : out.rows) {
      for (Dimension d : kDimensions) {
        const auto& f = out.fits[index(d)];
        if (f.fit) row.dims[index(d)] = f.fit->mu.at(row.system_id);
      }
    }
    for (Dimension d : kDimensions) {
      const auto& f = out.fits[index(d)];
      if (!f.fit) {
        out.notes.push_back(std::string(to_string(d)) + ": fit failed (" + f.error + ")");
      } else if (!f.fit->converged) {
        out.notes.push_back(std::string(to_string(d)) + ": fit did not converge in " +
                            std::to_string(f.fit->iterations) + " iterations");
      }
    }
  }

  for (auto& row : out.rows) {
    if (row.dims[0] && row.dims[1] && row.dims[2]) {
      row.overall_mean = (*row.dims[0] + *row.dims[1] + *row.dims[2]) / 3.0;
    }
    if (row.adjusted) continue;
    for (Dimension d : kDimensions) {
      const auto& est = row.dims[index(d)];
      if (est && std::abs(*est - row.naive[index(d)]) > 1e-6) {
        out.notes.push_back("fully covered system '" + row.system_id + "' " + std::string(to_string(d)) +
                            ": estimate differs from naive mean by " +
                            std::to_string(*est - row.naive[index(d)]));
      }
    }
  }
  return out;
}

}  // namespace editscore
