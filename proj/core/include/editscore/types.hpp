#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "editscore/error.hpp"

namespace editscore {

// The three rubric dimensions: Instruction Following, Rendering Quality and
// Edit Exclusivity.
enum class Dimension : std::uint8_t { kIF = 0, kRQ = 1, kEE = 2 };

inline constexpr std::size_t kNumDimensions = 3;
inline constexpr std::array<Dimension, kNumDimensions> kDimensions{Dimension::kIF, Dimension::kRQ,
                                                                   Dimension::kEE};

constexpr std::size_t index(Dimension d) noexcept { return static_cast<std::size_t>(d); }

std::string_view to_string(Dimension d) noexcept;
std::optional<Dimension> parse_dimension(std::string_view name) noexcept;

template <class T>
using PerDimension = std::array<T, kNumDimensions>;

// Report columns: the three dimensions plus the overall score.
enum class Column : std::uint8_t { kIF = 0, kRQ = 1, kEE = 2, kOverall = 3 };

inline constexpr std::size_t kNumColumns = 4;
inline constexpr std::array<Column, kNumColumns> kColumns{Column::kIF, Column::kRQ, Column::kEE,
                                                          Column::kOverall};

constexpr std::size_t index(Column c) noexcept { return static_cast<std::size_t>(c); }
constexpr Column column(Dimension d) noexcept { return static_cast<Column>(index(d)); }
std::string_view to_string(Column c) noexcept;

template <class T>
using PerColumn = std::array<T, kNumColumns>;

// A rubric label in {1,2,3,4}.
class OrdinalScore {
 public:
  static constexpr int kMin = 1;
  static constexpr int kMax = 4;
  static constexpr int kLevels = kMax - kMin + 1;

  explicit OrdinalScore(int value);

  constexpr int value() const noexcept { return value_; }
  constexpr auto operator<=>(const OrdinalScore&) const = default;

 private:
  int value_;
};

// A continuous score on [1, 4].
class SoftScore {
 public:
  static constexpr double kMin = 1.0;
  static constexpr double kMax = 4.0;

  explicit SoftScore(double value);
  SoftScore(OrdinalScore score) noexcept : value_(score.value()) {}

  constexpr double value() const noexcept { return value_; }
  constexpr auto operator<=>(const SoftScore&) const = default;

 private:
  double value_;
};

template <class Score>
struct ScoreTriplet {
  PerDimension<Score> scores;

  ScoreTriplet(Score if_score, Score rq_score, Score ee_score)
      : scores{if_score, rq_score, ee_score} {}

  const Score& operator[](Dimension d) const noexcept { return scores[index(d)]; }
  Score& operator[](Dimension d) noexcept { return scores[index(d)]; }

  bool operator==(const ScoreTriplet&) const = default;
};

using OrdinalTriplet = ScoreTriplet<OrdinalScore>;
using SoftTriplet = ScoreTriplet<SoftScore>;

SoftTriplet to_soft(const OrdinalTriplet& labels) noexcept;

// Overall human score: arithmetic mean of IF, RQ and EE. Computed from the
// integer sum, so triplets with equal sums give bit-identical results.
SoftScore overall_human(const OrdinalTriplet& labels) noexcept;
SoftScore overall_human(const SoftTriplet& scores) noexcept;
// IF + RQ + EE; overall_human == sum / 3 exactly in rational arithmetic.
int overall_thirds(const OrdinalTriplet& labels) noexcept;

// A number as written in an input file. The text is kept so that re-serialized
// files reproduce the input; the binary value is derived from it once.
struct Decimal {
  std::string text;
  double value = 0.0;

  static Decimal from_double(double v);
  bool operator==(const Decimal&) const = default;
};

struct AnnotationRecord {
  std::string sample_id;
  std::string group_id;
  std::string system_id;
  std::optional<std::string> rater_id;
  OrdinalTriplet labels;
  Provenance where;
};

struct PredictionRecord {
  std::string sample_id;
  std::string system_id;
  std::string judge_id;
  PerDimension<std::optional<Decimal>> dims;
  std::optional<Decimal> overall;
  Provenance where;

  // No per-dimension score at all: only the native overall is available.
  bool scalar_only() const noexcept;
  bool has_full_triplet() const noexcept;
  std::optional<double> dimension(Dimension d) const noexcept;
  std::optional<SoftTriplet> triplet() const;
  // Mean of the available dimension scores, or the native scalar when the
  // record has no dimension scores.
  double overall_prediction() const noexcept;
};

struct ItemCovariates {
  std::string item_id;
  std::string task_type;
  std::uint64_t prompt_length = 0;
  std::uint64_t constraint_count = 0;
  Provenance where;
};

// Editing-task taxonomy used when an items file does not declare its own.
const std::vector<std::string>& default_task_vocabulary();

}  // namespace editscore
