#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace editscore {

enum class SrccMode {
  // Pearson correlation of mid-ranks. Exact under ties; equals the
  // rank-difference formula when there are none.
  kMidRankPearson,
  // 1 - 6 * sum(d^2) / (n (n^2 - 1)) on mid-ranks, exact only without ties.
  kRankDifference,
};

// 1-based ranks; tied values share the mean of the ranks they span.
std::vector<double> mid_ranks(std::span<const double> values);

// Pearson correlation with a fixed left-to-right summation order.
// Throws for unequal lengths, n < 2, non-finite input or a constant list.
double pearson(std::span<const double> x, std::span<const double> y);

// Spearman rank-order correlation. Requires n >= 3 and non-constant inputs.
double srcc(std::span<const double> pred, std::span<const double> human,
            SrccMode mode = SrccMode::kMidRankPearson);

struct KendallCounts {
  std::int64_t n = 0;
  std::int64_t total_pairs = 0;
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;
  std::int64_t tied_pred = 0;   // includes pairs tied in both lists
  std::int64_t tied_human = 0;  // includes pairs tied in both lists
  std::int64_t tied_both = 0;
};

// Pair classification in O(n log n) (sort plus merge-sort inversion count).
KendallCounts kendall_counts(std::span<const double> pred, std::span<const double> human);

// Kendall tau-b. Requires n >= 3; throws when either list is fully tied.
double krcc_tau_b(std::span<const double> pred, std::span<const double> human);
double tau_b_from_counts(const KendallCounts& c);

}  // namespace editscore
