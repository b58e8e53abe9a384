#include "editscore/preference.hpp"

#include <cmath>

namespace editscore {

double pair_score(double human_i, double human_j, double pred_i, double pred_j, double tie_eps) {
  if (!(tie_eps >= 0.0)) fail(ErrorKind::kPrecondition, "pair_score: tie_eps must be >= 0");
  if (human_i == human_j) return 1.0;
  const double dp = pred_i - pred_j;
  if (std::abs(dp) <= tie_eps) return 0.5;
  return ((dp > 0.0) == (human_i > human_j)) ? 1.0 : 0.0;
}

PairAccuracy pairwise_accuracy_detail(std::span<const RankingGroup> groups, double tie_eps) {
  if (!(tie_eps >= 0.0)) fail(ErrorKind::kPrecondition, "pairacc: tie_eps must be >= 0");
  PairAccuracy out;
  for (const auto& g : groups) {
    const auto& m = g.members;
    if (m.size() < 2) {
      fail(ErrorKind::kPrecondition, "pairacc: group '" + g.group_id + "' has fewer than 2 members");
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = i + 1; j < m.size(); ++j) {
        out.score_sum += pair_score(m[i].human, m[j].human, m[i].pred, m[j].pred, tie_eps);
        ++out.pairs;
      }
    }
    ++out.groups;
  }
  if (out.pairs == 0) fail(ErrorKind::kPrecondition, "pairacc: no group with >= 2 members");
  out.accuracy = out.score_sum / static_cast<double>(out.pairs);
  return out;
}

double pairwise_accuracy(std::span<const RankingGroup> groups, double tie_eps) {
  return pairwise_accuracy_detail(groups, tie_eps).accuracy;
}

std::vector<RankingGroup> ranking_groups(const EvalTable& table, const ScoreSource& source, Column col) {
  std::vector<RankingGroup> out;
  const auto& samples = table.samples();
  for (const auto& [group_id, members] : table.groups()) {
    RankingGroup g{group_id, {}};
    for (std::size_t i : members) {
      const auto& s = samples[i];
      const double human = col == Column::kOverall
                               ? overall_human(s.labels).value()
                               : s.labels[static_cast<Dimension>(index(col))].value();
      std::optional<double> pred;
      if (!source.judge_id) {
        pred = human;
      } else if (const PredictionRecord* p = table.prediction(i, *source.judge_id)) {
        pred = col == Column::kOverall ? std::optional<double>(p->overall_prediction())
                                       : p->dimension(static_cast<Dimension>(index(col)));
      }
      if (pred) g.members.push_back(RankingMember{s.sample_id, human, *pred});
    }
    if (g.members.size() >= 2) out.push_back(std::move(g));
  }
  return out;
}

PerColumn<std::optional<double>> per_dimension_pairacc(const EvalTable& table,
                                                       std::string_view judge_id, double tie_eps) {
  PerColumn<std::optional<double>> out;
  for (Column c : kColumns) {
    const auto groups = ranking_groups(table, ScoreSource::judge(std::string(judge_id)), c);
    if (groups.empty()) continue;
    out[index(c)] = pairwise_accuracy(groups, tie_eps);
  }
  return out;
}

}  // namespace editscore
