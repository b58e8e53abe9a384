#include "editscore/agreement.hpp"

#include <cstdio>
#include <cstdlib>
#include <vector>

namespace editscore {

Agreement agreement(std::span<const RatingPair> pairs) {
  if (pairs.empty()) fail(ErrorKind::kPrecondition, "agreement: no rating pairs");
  std::size_t exact = 0, within1 = 0;
  for (const auto& [a, b] : pairs) {
    const int gap = std::abs(a.value() - b.value());
    if (gap == 0) ++exact;
    if (gap <= 1) ++within1;
  }
  const auto n = static_cast<double>(pairs.size());
  return Agreement{100.0 * static_cast<double>(exact) / n, 100.0 * static_cast<double>(within1) / n,
                   pairs.size()};
}

PerDimension<Agreement> rater_agreement(const EvalTable& table) {
  PerDimension<std::vector<RatingPair>> pairs;
  for (const auto& s : table.samples()) {
    if (s.annotation_rows.size() < 2) continue;
    if (s.annotation_rows.size() > 2) {
      fail(ErrorKind::kPrecondition,
           "agreement: sample '" + s.sample_id + "' has " + std::to_string(s.annotation_rows.size()) +
               " raters, expected exactly two",
           table.annotations()[s.annotation_rows[2]].where);
    }
    const auto& a = table.annotations()[s.annotation_rows[0]].labels;
    const auto& b = table.annotations()[s.annotation_rows[1]].labels;
    for (Dimension d : kDimensions) pairs[index(d)].emplace_back(a[d], b[d]);
  }
  PerDimension<Agreement> out;
  for (Dimension d : kDimensions) out[index(d)] = agreement(pairs[index(d)]);
  return out;
}

std::string format_percent(double pct) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", pct);
  return buf;
}

}  // namespace editscore
