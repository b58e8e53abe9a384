#include "editscore/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "editscore/error.hpp"

namespace editscore {

namespace {

void check_pair(std::span<const double> a, std::span<const double> b, std::size_t min_n,
                const char* what) {
  if (a.size() != b.size()) {
    fail(ErrorKind::kPrecondition, std::string(what) + ": lists differ in length (" +
                                       std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  if (a.size() < min_n) {
    fail(ErrorKind::kPrecondition,
         std::string(what) + ": need n >= " + std::to_string(min_n) + ", got " + std::to_string(a.size()));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i])) {
      fail(ErrorKind::kPrecondition, std::string(what) + ": non-finite input at index " + std::to_string(i));
    }
  }
}

bool is_constant(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

std::int64_t tied_pairs_in_sorted(const std::vector<double>& sorted) {
  std::int64_t ties = 0;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      ties += static_cast<std::int64_t>(run * (run - 1) / 2);
      run = 1;
    }
  }
  return ties;
}

// Counts strict inversions of v while merge-sorting it in place.
std::int64_t count_inversions(std::vector<double>& v, std::vector<double>& scratch, std::size_t lo,
                              std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t inv = count_inversions(v, scratch, lo, mid) + count_inversions(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      inv += static_cast<std::int64_t>(mid - i);
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi), v.begin() + static_cast<std::ptrdiff_t>(lo));
  return inv;
}

}  // namespace

std::vector<double> mid_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // positions i..j-1 hold ranks i+1..j
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y, 2, "pearson");
  if (is_constant(x) || is_constant(y)) {
    fail(ErrorKind::kPrecondition, "pearson: correlation undefined for a constant list");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) fail(ErrorKind::kPrecondition, "pearson: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double srcc(std::span<const double> pred, std::span<const double> human, SrccMode mode) {
  check_pair(pred, human, 3, "srcc");
  if (is_constant(pred) || is_constant(human)) {
    fail(ErrorKind::kPrecondition, "srcc: correlation undefined for a constant list");
  }
  const auto rp = mid_ranks(pred);
  const auto rh = mid_ranks(human);
  if (mode == SrccMode::kMidRankPearson) return pearson(rp, rh);
  double d2 = 0.0;
  for (std::size_t i = 0; i < rp.size(); ++i) d2 += (rp[i] - rh[i]) * (rp[i] - rh[i]);
  const auto n = static_cast<double>(rp.size());
  return std::clamp(1.0 - 6.0 * d2 / (n * (n * n - 1.0)), -1.0, 1.0);
}

KendallCounts kendall_counts(std::span<const double> pred, std::span<const double> human) {
  check_pair(pred, human, 0, "kendall");
  const std::size_t n = pred.size();
  KendallCounts c;
  c.n = static_cast<std::int64_t>(n);
  c.total_pairs = c.n * (c.n - 1) / 2;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pred[a] != pred[b]) return pred[a] < pred[b];
    return human[a] < human[b];
  });

  std::vector<double> p(n), h(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = pred[order[i]];
    h[i] = human[order[i]];
  }
  c.tied_pred = tied_pairs_in_sorted(p);
  // Runs equal in both coordinates are contiguous after the lexicographic sort.
  std::size_t run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && p[i] == p[i - 1] && h[i] == h[i - 1]) {
      ++run;
    } else {
      c.tied_both += static_cast<std::int64_t>(run * (run - 1) / 2);
      run = 1;
    }
  }
  // With pred ascending (ties broken by human ascending), a discordant pair is
  // exactly a strict inversion in the human sequence.
  std::vector<double> scratch(n);
  c.discordant = count_inversions(h, scratch, 0, n);
  c.tied_human = tied_pairs_in_sorted(h);  // h is sorted now
  c.concordant = c.total_pairs - c.tied_pred - c.tied_human + c.tied_both - c.discordant;
  return c;
}

double tau_b_from_counts(const KendallCounts& c) {
  const auto a = static_cast<double>(c.total_pairs - c.tied_pred);
  const auto b = static_cast<double>(c.total_pairs - c.tied_human);
  if (a <= 0.0 || b <= 0.0) {
    fail(ErrorKind::kPrecondition, "krcc: tau-b undefined, a list is fully tied");
  }
  const double tau = static_cast<double>(c.concordant - c.discordant) / std::sqrt(a * b);
  return std::clamp(tau, -1.0, 1.0);
}

double krcc_tau_b(std::span<const double> pred, std::span<const double> human) {
  check_pair(pred, human, 3, "krcc");
  return tau_b_from_counts(kendall_counts(pred, human));
}

}  // namespace editscore
