#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "editscore/types.hpp"

namespace editscore {

struct LoadOptions {
  // Reject unknown keys instead of ignoring them with a warning.
  bool strict = false;
};

// Covariates for every benchmark item plus the declared task vocabulary.
// An items file may open with a header object
//   {"task_types": [...], "prompt_length_unit": "words"}
// Without one, the default task taxonomy applies.
class ItemIndex {
 public:
  ItemIndex() = default;
  ItemIndex(std::vector<ItemCovariates> items, std::vector<std::string> vocabulary,
            std::string prompt_length_unit);

  const std::vector<ItemCovariates>& items() const noexcept { return items_; }
  const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
  const std::string& prompt_length_unit() const noexcept { return prompt_length_unit_; }
  const ItemCovariates* find(std::string_view item_id) const noexcept;
  bool empty() const noexcept { return items_.empty(); }
  std::size_t size() const noexcept { return items_.size(); }
  // True when the items were loaded with an explicit header line.
  bool has_header() const noexcept { return has_header_; }
  void set_has_header(bool v) noexcept { has_header_ = v; }

 private:
  std::vector<ItemCovariates> items_;
  std::vector<std::string> vocabulary_ = default_task_vocabulary();
  std::string prompt_length_unit_ = "words";
  std::map<std::string, std::size_t, std::less<>> by_id_;
  bool has_header_ = false;
};

struct FeatureRecord {
  std::string sample_id;
  std::vector<double> x;
  Provenance where;
};

std::vector<AnnotationRecord> parse_annotations(std::istream& in, const std::string& source,
                                                const LoadOptions& options = {},
                                                std::vector<std::string>* warnings = nullptr);
std::vector<PredictionRecord> parse_predictions(std::istream& in, const std::string& source,
                                                const LoadOptions& options = {},
                                                std::vector<std::string>* warnings = nullptr);
ItemIndex parse_items(std::istream& in, const std::string& source, const LoadOptions& options = {},
                      std::vector<std::string>* warnings = nullptr);
std::vector<FeatureRecord> parse_features(std::istream& in, const std::string& source,
                                          const LoadOptions& options = {},
                                          std::vector<std::string>* warnings = nullptr);

std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path,
                                               const LoadOptions& options = {},
                                               std::vector<std::string>* warnings = nullptr);
std::vector<PredictionRecord> load_predictions(const std::filesystem::path& path,
                                               const LoadOptions& options = {},
                                               std::vector<std::string>* warnings = nullptr);
ItemIndex load_items(const std::filesystem::path& path, const LoadOptions& options = {},
                     std::vector<std::string>* warnings = nullptr);
std::vector<FeatureRecord> load_features(const std::filesystem::path& path,
                                         const LoadOptions& options = {},
                                         std::vector<std::string>* warnings = nullptr);

// Canonical serialization: compact objects, fixed key order, numbers written
// with the text they were loaded from, one record per line.
std::string serialize_annotations(std::span<const AnnotationRecord> records);
std::string serialize_predictions(std::span<const PredictionRecord> records);
std::string serialize_items(const ItemIndex& items);
std::string serialize_features(std::span<const FeatureRecord> records);

// Counts reported after validation.
struct DatasetSummary {
  std::size_t annotations = 0;
  std::size_t samples = 0;
  std::size_t predictions = 0;
  std::size_t groups = 0;
  std::size_t items = 0;
  std::size_t double_annotated_samples = 0;
  std::map<std::string, std::size_t> samples_per_group;
  std::map<std::string, std::size_t> samples_per_system;
  std::map<std::string, std::size_t> predictions_per_judge;
  std::map<std::string, PerColumn<std::size_t>> scored_per_judge;
};

// Joined, indexed view of annotations, predictions and item covariates.
// Immutable once built.
class EvalTable {
 public:
  struct Sample {
    std::string sample_id;
    std::string group_id;
    std::string system_id;
    // Labels of the first annotation record for the sample (file order).
    OrdinalTriplet labels;
    // Indices into annotations(), file order.
    std::vector<std::size_t> annotation_rows;
  };

  const std::vector<Sample>& samples() const noexcept { return samples_; }
  const std::vector<AnnotationRecord>& annotations() const noexcept { return annotations_; }
  const std::vector<PredictionRecord>& predictions() const noexcept { return predictions_; }
  const ItemIndex& items() const noexcept { return items_; }

  // Groups in lexicographic order of group_id; members in sample order.
  const std::map<std::string, std::vector<std::size_t>>& groups() const noexcept { return groups_; }
  // Judge ids in lexicographic order.
  std::vector<std::string> judges() const;
  bool has_judge(std::string_view judge_id) const;
  std::vector<std::string> systems() const;

  // The judge's prediction for a sample, or nullptr.
  const PredictionRecord* prediction(std::size_t sample, std::string_view judge_id) const;
  std::optional<std::size_t> find_sample(std::string_view sample_id) const;

  const DatasetSummary& summary() const noexcept { return summary_; }

  friend EvalTable validate_dataset(std::vector<AnnotationRecord> annotations,
                                    std::vector<PredictionRecord> predictions, ItemIndex items);

 private:
  std::vector<AnnotationRecord> annotations_;
  std::vector<PredictionRecord> predictions_;
  ItemIndex items_;
  std::vector<Sample> samples_;
  std::map<std::string, std::size_t, std::less<>> sample_index_;
  std::map<std::string, std::vector<std::size_t>> groups_;
  std::map<std::string, std::vector<std::optional<std::size_t>>, std::less<>> by_judge_;
  DatasetSummary summary_;
};

// Joins predictions to annotations and checks cross-record invariants:
// unique (sample_id, rater_id), consistent group and system per sample, no
// orphan or duplicate predictions.
EvalTable validate_dataset(std::vector<AnnotationRecord> annotations,
                           std::vector<PredictionRecord> predictions, ItemIndex items = {});

// Where evaluation scores come from: a judge's predictions or the human labels.
struct ScoreSource {
  std::optional<std::string> judge_id;  // nullopt = human labels

  static ScoreSource human() { return ScoreSource{}; }
  static ScoreSource judge(std::string id) { return ScoreSource{std::move(id)}; }
  std::string name() const { return judge_id ? *judge_id : std::string("human"); }
};

struct ScoredSample {
  std::size_t sample;
  std::string system_id;
  std::string group_id;
  SoftTriplet scores;
};

// Samples that have a full soft triplet under `source`, in sample order.
std::vector<ScoredSample> scored_samples(const EvalTable& table, const ScoreSource& source);

}  // namespace editscore
