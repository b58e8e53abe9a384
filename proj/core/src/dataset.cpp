#include "editscore/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "editscore/jsonl.hpp"

namespace editscore {

namespace {

void check_keys(const jsonl::Record& r, std::initializer_list<std::string_view> allowed,
                const LoadOptions& options, std::vector<std::string>* warnings) {
  const auto unknown = r.unknown_keys(allowed);
  if (unknown.empty()) return;
  std::string names;
  for (const auto& k : unknown) names += (names.empty() ? "'" : ", '") + k + "'";
  if (options.strict) fail(ErrorKind::kSchema, "unknown key(s) " + names, r.where);
  if (warnings != nullptr) warnings->push_back(r.where.str() + ": ignoring unknown key(s) " + names);
}

OrdinalScore ordinal_field(const jsonl::Record& r, std::string_view key) {
  const std::int64_t v = r.integer(key);
  if (v < OrdinalScore::kMin || v > OrdinalScore::kMax) {
    fail(ErrorKind::kRange,
         "score " + std::string(key) + "=" + std::to_string(v) + " outside {1,2,3,4}", r.where);
  }
  return OrdinalScore(static_cast<int>(v));
}

std::optional<Decimal> soft_field(const jsonl::Record& r, std::string_view key) {
  auto d = r.optional_decimal(key);
  if (d && !(d->value >= SoftScore::kMin && d->value <= SoftScore::kMax)) {
    fail(ErrorKind::kRange, "score " + std::string(key) + "=" + d->text + " outside [1, 4]",
         r.where);
  }
  return d;
}

std::uint64_t count_field(const jsonl::Record& r, std::string_view key) {
  const std::int64_t v = r.integer(key);
  if (v < 0) fail(ErrorKind::kRange, std::string(key) + " must be >= 0", r.where);
  return static_cast<std::uint64_t>(v);
}

std::string nonempty_id(const jsonl::Record& r, std::string_view key) {
  std::string v = r.string(key);
  if (v.empty()) fail(ErrorKind::kSchema, std::string(key) + " must not be empty", r.where);
  return v;
}

template <class F>
auto with_file(const std::filesystem::path& path, F&& parse) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  return parse(in, path.string());
}

}  // namespace

ItemIndex::ItemIndex(std::vector<ItemCovariates> items, std::vector<std::string> vocabulary,
                     std::string prompt_length_unit)
    : items_(std::move(items)),
      vocabulary_(std::move(vocabulary)),
      prompt_length_unit_(std::move(prompt_length_unit)) {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const auto& item = items_[i];
    if (!by_id_.emplace(item.item_id, i).second) {
      fail(ErrorKind::kDuplicate, "duplicate item_id '" + item.item_id + "'", item.where);
    }
    if (std::find(vocabulary_.begin(), vocabulary_.end(), item.task_type) == vocabulary_.end()) {
      fail(ErrorKind::kSchema, "task_type '" + item.task_type + "' not in declared vocabulary",
           item.where);
    }
  }
}

const ItemCovariates* ItemIndex::find(std::string_view item_id) const noexcept {
  auto it = by_id_.find(item_id);
  return it == by_id_.end() ? nullptr : &items_[it->second];
}

std::vector<AnnotationRecord> parse_annotations(std::istream& in, const std::string& source,
                                                const LoadOptions& options,
                                                std::vector<std::string>* warnings) {
  std::vector<AnnotationRecord> out;
  for (const auto& r : jsonl::read(in, source)) {
    check_keys(r, {"sample_id", "group_id", "system_id", "rater_id", "IF", "RQ", "EE"}, options,
               warnings);
    out.push_back(AnnotationRecord{
        nonempty_id(r, "sample_id"),
        nonempty_id(r, "group_id"),
        nonempty_id(r, "system_id"),
        r.optional_string("rater_id"),
        OrdinalTriplet(ordinal_field(r, "IF"), ordinal_field(r, "RQ"), ordinal_field(r, "EE")),
        r.where,
    });
  }
  return out;
}

std::vector<PredictionRecord> parse_predictions(std::istream& in, const std::string& source,
                                                const LoadOptions& options,
                                                std::vector<std::string>* warnings) {
  std::vector<PredictionRecord> out;
  for (const auto& r : jsonl::read(in, source)) {
    check_keys(r, {"sample_id", "system_id", "judge_id", "IF", "RQ", "EE", "overall"}, options,
               warnings);
    PredictionRecord p;
    p.sample_id = nonempty_id(r, "sample_id");
    p.system_id = nonempty_id(r, "system_id");
    p.judge_id = nonempty_id(r, "judge_id");
    for (Dimension d : kDimensions) p.dims[index(d)] = soft_field(r, to_string(d));
    p.overall = soft_field(r, "overall");
    p.where = r.where;
    if (!p.has_full_triplet() && !p.overall) {
      fail(ErrorKind::kSchema, "prediction needs all of IF, RQ, EE or an overall score", r.where);
    }
    out.push_back(std::move(p));
  }
  return out;
}

ItemIndex parse_items(std::istream& in, const std::string& source, const LoadOptions& options,
                      std::vector<std::string>* warnings) {
  const auto records = jsonl::read(in, source);
  std::vector<std::string> vocabulary = default_task_vocabulary();
  std::string unit = "words";
  bool header = false;
  std::vector<ItemCovariates> items;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (i == 0 && !r.contains("item_id") && r.contains("task_types")) {
      check_keys(r, {"task_types", "prompt_length_unit"}, options, warnings);
      vocabulary = r.string_array("task_types");
      if (vocabulary.empty()) fail(ErrorKind::kSchema, "task_types must not be empty", r.where);
      if (auto u = r.optional_string("prompt_length_unit")) unit = *u;
      if (unit != "words" && unit != "tokens") {
        fail(ErrorKind::kSchema, "prompt_length_unit must be 'words' or 'tokens'", r.where);
      }
      header = true;
      continue;
    }
    check_keys(r, {"item_id", "task_type", "prompt_length", "constraint_count"}, options, warnings);
    items.push_back(ItemCovariates{
        nonempty_id(r, "item_id"),
        nonempty_id(r, "task_type"),
        count_field(r, "prompt_length"),
        count_field(r, "constraint_count"),
        r.where,
    });
  }
  ItemIndex index(std::move(items), std::move(vocabulary), std::move(unit));
  index.set_has_header(header);
  return index;
}

std::vector<FeatureRecord> parse_features(std::istream& in, const std::string& source,
                                          const LoadOptions& options,
                                          std::vector<std::string>* warnings) {
  std::vector<FeatureRecord> out;
  for (const auto& r : jsonl::read(in, source)) {
    check_keys(r, {"sample_id", "x"}, options, warnings);
    FeatureRecord f{nonempty_id(r, "sample_id"), r.number_array("x"), r.where};
    if (f.x.empty()) fail(ErrorKind::kSchema, "feature vector must not be empty", r.where);
    for (double v : f.x) {
      if (!std::isfinite(v)) fail(ErrorKind::kRange, "non-finite feature value", r.where);
    }
    if (!out.empty() && out.front().x.size() != f.x.size()) {
      fail(ErrorKind::kSchema,
           "feature length " + std::to_string(f.x.size()) + " differs from " +
               std::to_string(out.front().x.size()),
           r.where);
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<AnnotationRecord> load_annotations(const std::filesystem::path& path,
                                               const LoadOptions& options,
                                               std::vector<std::string>* warnings) {
  return with_file(path, [&](std::istream& in, const std::string& name) {
    return parse_annotations(in, name, options, warnings);
  });
}

std::vector<PredictionRecord> load_predictions(const std::filesystem::path& path,
                                               const LoadOptions& options,
                                               std::vector<std::string>* warnings) {
  return with_file(path, [&](std::istream& in, const std::string& name) {
    return parse_predictions(in, name, options, warnings);
  });
}

ItemIndex load_items(const std::filesystem::path& path, const LoadOptions& options,
                     std::vector<std::string>* warnings) {
  return with_file(path, [&](std::istream& in, const std::string& name) {
    return parse_items(in, name, options, warnings);
  });
}

std::vector<FeatureRecord> load_features(const std::filesystem::path& path,
                                         const LoadOptions& options,
                                         std::vector<std::string>* warnings) {
  return with_file(path, [&](std::istream& in, const std::string& name) {
    return parse_features(in, name, options, warnings);
  });
}

std::string serialize_annotations(std::span<const AnnotationRecord> records) {
  std::string out;
  for (const auto& a : records) {
    jsonl::ObjectWriter w;
    w.string("sample_id", a.sample_id).string("group_id", a.group_id).string("system_id", a.system_id);
    if (a.rater_id) w.string("rater_id", *a.rater_id);
    for (Dimension d : kDimensions) w.integer(to_string(d), a.labels[d].value());
    out += w.str();
    out += '\n';
  }
  return out;
}

std::string serialize_predictions(std::span<const PredictionRecord> records) {
  std::string out;
  for (const auto& p : records) {
    jsonl::ObjectWriter w;
    w.string("sample_id", p.sample_id).string("system_id", p.system_id).string("judge_id", p.judge_id);
    for (Dimension d : kDimensions) {
      if (const auto& v = p.dims[index(d)]) w.raw(to_string(d), v->text);
    }
    if (p.overall) w.raw("overall", p.overall->text);
    out += w.str();
    out += '\n';
  }
  return out;
}

std::string serialize_items(const ItemIndex& items) {
  std::string out;
  if (items.has_header()) {
    std::string vocab = "[";
    for (std::size_t i = 0; i < items.vocabulary().size(); ++i) {
      if (i > 0) vocab += ',';
      vocab += jsonl::quote(items.vocabulary()[i]);
    }
    vocab += ']';
    out += jsonl::ObjectWriter()
               .raw("task_types", vocab)
               .string("prompt_length_unit", items.prompt_length_unit())
               .str();
    out += '\n';
  }
  for (const auto& item : items.items()) {
    out += jsonl::ObjectWriter()
               .string("item_id", item.item_id)
               .string("task_type", item.task_type)
               .integer("prompt_length", static_cast<std::int64_t>(item.prompt_length))
               .integer("constraint_count", static_cast<std::int64_t>(item.constraint_count))
               .str();
    out += '\n';
  }
  return out;
}

std::string serialize_features(std::span<const FeatureRecord> records) {
  std::string out;
  for (const auto& f : records) {
    out += jsonl::ObjectWriter().string("sample_id", f.sample_id).numbers("x", f.x).str();
    out += '\n';
  }
  return out;
}

EvalTable validate_dataset(std::vector<AnnotationRecord> annotations,
                           std::vector<PredictionRecord> predictions, ItemIndex items) {
  EvalTable t;
  t.annotations_ = std::move(annotations);
  t.predictions_ = std::move(predictions);
  t.items_ = std::move(items);

  std::set<std::pair<std::string, std::string>> rater_keys;
  for (std::size_t row = 0; row < t.annotations_.size(); ++row) {
    const auto& a = t.annotations_[row];
    // An absent rater_id is its own key: at most one unnamed rater per sample.
    const std::string rater = a.rater_id ? "r:" + *a.rater_id : std::string("-");
    if (!rater_keys.emplace(a.sample_id, rater).second) {
      fail(ErrorKind::kDuplicate,
           "duplicate (sample_id, rater_id) = ('" + a.sample_id + "', " +
               (a.rater_id ? "'" + *a.rater_id + "'" : std::string("<none>")) + ")",
           a.where);
    }
    auto [it, inserted] = t.sample_index_.emplace(a.sample_id, t.samples_.size());
    if (inserted) {
      t.samples_.push_back(EvalTable::Sample{a.sample_id, a.group_id, a.system_id, a.labels, {row}});
      continue;
    }
    auto& s = t.samples_[it->second];
    if (s.group_id != a.group_id) {
      fail(ErrorKind::kInconsistent,
           "sample '" + a.sample_id + "' has group_id '" + a.group_id + "' but earlier '" +
               s.group_id + "'",
           a.where);
    }
    if (s.system_id != a.system_id) {
      fail(ErrorKind::kInconsistent,
           "sample '" + a.sample_id + "' has system_id '" + a.system_id + "' but earlier '" +
               s.system_id + "'",
           a.where);
    }
    s.annotation_rows.push_back(row);
  }

  for (std::size_t i = 0; i < t.samples_.size(); ++i) t.groups_[t.samples_[i].group_id].push_back(i);

  for (std::size_t row = 0; row < t.predictions_.size(); ++row) {
    const auto& p = t.predictions_[row];
    auto it = t.sample_index_.find(p.sample_id);
    if (it == t.sample_index_.end()) {
      fail(ErrorKind::kOrphan, "prediction references unknown sample_id '" + p.sample_id + "'",
           p.where);
    }
    const auto& sample = t.samples_[it->second];
    if (sample.system_id != p.system_id) {
      fail(ErrorKind::kInconsistent,
           "prediction system_id '" + p.system_id + "' differs from annotated system '" +
               sample.system_id + "'",
           p.where);
    }
    auto& slots = t.by_judge_[p.judge_id];
    if (slots.empty()) slots.resize(t.samples_.size());
    auto& slot = slots[it->second];
    if (slot) {
      fail(ErrorKind::kDuplicate,
           "duplicate prediction for sample '" + p.sample_id + "' by judge '" + p.judge_id + "'",
           p.where);
    }
    slot = row;
  }

  auto& s = t.summary_;
  s.annotations = t.annotations_.size();
  s.samples = t.samples_.size();
  s.predictions = t.predictions_.size();
  s.groups = t.groups_.size();
  s.items = t.items_.size();
  for (const auto& sample : t.samples_) {
    ++s.samples_per_group[sample.group_id];
    ++s.samples_per_system[sample.system_id];
    if (sample.annotation_rows.size() >= 2) ++s.double_annotated_samples;
  }
  for (const auto& p : t.predictions_) {
    ++s.predictions_per_judge[p.judge_id];
    auto& counts = s.scored_per_judge[p.judge_id];
    for (Dimension d : kDimensions) {
      if (p.dims[index(d)]) ++counts[index(d)];
    }
    ++counts[index(Column::kOverall)];
  }
  return t;
}

std::vector<std::string> EvalTable::judges() const {
  std::vector<std::string> out;
  for (const auto& [judge, slots] : by_judge_) out.push_back(judge);
  return out;
}

bool EvalTable::has_judge(std::string_view judge_id) const { return by_judge_.contains(judge_id); }

std::vector<std::string> EvalTable::systems() const {
  std::vector<std::string> out;
  for (const auto& [system, n] : summary_.samples_per_system) out.push_back(system);
  return out;
}

const PredictionRecord* EvalTable::prediction(std::size_t sample, std::string_view judge_id) const {
  auto it = by_judge_.find(judge_id);
  if (it == by_judge_.end() || sample >= it->second.size()) return nullptr;
  const auto& slot = it->second[sample];
  return slot ? &predictions_[*slot] : nullptr;
}

std::optional<std::size_t> EvalTable::find_sample(std::string_view sample_id) const {
  auto it = sample_index_.find(sample_id);
  if (it == sample_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<ScoredSample> scored_samples(const EvalTable& table, const ScoreSource& source) {
  std::vector<ScoredSample> out;
  const auto& samples = table.samples();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!source.judge_id) {
      out.push_back(ScoredSample{i, s.system_id, s.group_id, to_soft(s.labels)});
      continue;
    }
    const PredictionRecord* p = table.prediction(i, *source.judge_id);
    if (p == nullptr) continue;
    if (auto triplet = p->triplet()) out.push_back(ScoredSample{i, s.system_id, s.group_id, *triplet});
  }
  return out;
}

}  // namespace editscore
