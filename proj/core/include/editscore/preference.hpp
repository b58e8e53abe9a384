#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "editscore/dataset.hpp"
#include "editscore/types.hpp"

namespace editscore {

struct RankingMember {
  std::string sample_id;
  double human = 0.0;
  double pred = 0.0;
};

// Candidate edits sharing one source video and instruction. Pairs are only
// ever formed inside a group.
struct RankingGroup {
  std::string group_id;
  std::vector<RankingMember> members;
};

// 1 if the human pair is tied; 0.5 if only the prediction is tied
// (|pred_i - pred_j| <= tie_eps); otherwise 1 when the orders agree, 0 when not.
double pair_score(double human_i, double human_j, double pred_i, double pred_j, double tie_eps = 0.0);

struct PairAccuracy {
  double accuracy = 0.0;
  double score_sum = 0.0;
  std::size_t pairs = 0;
  std::size_t groups = 0;
};

// Sum of pair scores over all within-group pairs divided by the pair count.
// Every group needs >= 2 members.
PairAccuracy pairwise_accuracy_detail(std::span<const RankingGroup> groups, double tie_eps = 0.0);
double pairwise_accuracy(std::span<const RankingGroup> groups, double tie_eps = 0.0);

// Groups of samples the judge scored in `col`, dropping groups with fewer
// than two scored members. Human overall values are exact thirds.
std::vector<RankingGroup> ranking_groups(const EvalTable& table, const ScoreSource& source, Column col);

// PairAcc per column; empty where the judge has no usable scores.
PerColumn<std::optional<double>> per_dimension_pairacc(const EvalTable& table,
                                                       std::string_view judge_id,
                                                       double tie_eps = 0.0);

}  // namespace editscore
