#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "editscore/adjusted_leaderboard.hpp"
#include "editscore/agreement.hpp"
#include "editscore/dataset.hpp"
#include "editscore/geoagg.hpp"
#include "editscore/head_training.hpp"
#include "editscore/jsonl.hpp"
#include "editscore/metric_report.hpp"
#include "editscore/preference.hpp"

namespace editscore::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* name(Subcommand s) {
  switch (s) {
    case Subcommand::kValidate: return "validate";
    case Subcommand::kMetrics: return "metrics";
    case Subcommand::kPairacc: return "pairacc";
    case Subcommand::kAggregate: return "aggregate";
    case Subcommand::kAdjust: return "adjust";
    case Subcommand::kAgreement: return "agreement";
    case Subcommand::kTrainHead: return "train-head";
    case Subcommand::kScoreHead: return "score-head";
    case Subcommand::kReport: return "report";
  }
  return "?";
}

const fs::path& need(const std::optional<fs::path>& p, const char* flag, const RunConfig& config) {
  if (!p) throw UsageError(std::string(name(config.subcommand)) + " requires " + flag);
  return *p;
}

void check_readable(const std::optional<fs::path>& p) {
  if (!p) return;
  std::error_code ec;
  if (!fs::is_regular_file(*p, ec)) fail(ErrorKind::kIo, "not a readable file: " + p->string());
  std::ifstream probe(*p);
  if (!probe) fail(ErrorKind::kIo, "cannot open " + p->string());
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorKind::kIo, "cannot write " + path.string());
  f << content;
  if (!f) fail(ErrorKind::kIo, "write failed: " + path.string());
}

std::string num(std::optional<double> v) { return v ? jsonl::format_double(*v) : "NA"; }

ordered_json json_num(std::optional<double> v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  return line + "\n";
}

ScoreSource score_source(const RunConfig& c, const EvalTable& table) {
  if (!c.judge || *c.judge == "human") return ScoreSource::human();
  if (!table.has_judge(*c.judge)) fail(ErrorKind::kPrecondition, "unknown judge '" + *c.judge + "'");
  return ScoreSource::judge(*c.judge);
}

std::string weights_text(const RunConfig& c) {
  return jsonl::format_double(c.weights[0]) + ";" + jsonl::format_double(c.weights[1]) + ";" +
         jsonl::format_double(c.weights[2]);
}

class Session {
 public:
  Session(const RunConfig& config, std::ostream& out, std::ostream& err) : c_(config), out_(out), err_(err) {}

  void validate_inputs() {
    for (const auto* p : {&c_.annotations, &c_.predictions, &c_.items, &c_.features, &c_.labels}) check_readable(*p);
    if (c_.subcommand == Subcommand::kScoreHead) check_readable(c_.params);
    if (c_.out) {
      std::error_code ec;
      fs::create_directories(*c_.out, ec);
      if (ec || !fs::is_directory(*c_.out)) fail(ErrorKind::kIo, "cannot create output directory " + c_.out->string());
    }
  }

  void dispatch() {
    switch (c_.subcommand) {
      case Subcommand::kValidate: return validate();
      case Subcommand::kMetrics: return metrics(load(true, false));
      case Subcommand::kPairacc: return pairacc(load(true, false));
      case Subcommand::kAggregate: return aggregate(load(false, false));
      case Subcommand::kAdjust: return adjust(load(false, true));
      case Subcommand::kAgreement: return agreement(load(false, false));
      case Subcommand::kTrainHead: return train_head();
      case Subcommand::kScoreHead: return score_head();
      case Subcommand::kReport: return report();
    }
  }

 private:
  EvalTable load(bool need_predictions, bool need_items) {
    LoadOptions opts{c_.strict};
    auto annotations = load_annotations(need(c_.annotations, "--annotations", c_), opts, &warnings_);
    std::vector<PredictionRecord> predictions;
    if (need_predictions) need(c_.predictions, "--predictions", c_);
    if (c_.predictions) predictions = load_predictions(*c_.predictions, opts, &warnings_);
    ItemIndex items;
    if (need_items) need(c_.items, "--items", c_);
    if (c_.items) items = load_items(*c_.items, opts, &warnings_);
    flush_warnings();
    return validate_dataset(std::move(annotations), std::move(predictions), std::move(items));
  }

  void flush_warnings() {
    for (const auto& w : warnings_) err_ << ordered_json{{"warning", w}}.dump() << "\n";
    warnings_.clear();
  }

  std::string header(const std::string& what, const std::string& flags) const {
    return "# editscore " + what + "; scores on the 1-4 rubric scale; " + flags + "\n";
  }

  void emit(const std::string& file, const std::string& content) {
    if (c_.out) {
      write_file(*c_.out / file, content);
    } else {
      out_ << content;
    }
  }

  ordered_json summary_json(const EvalTable& table) const {
    const auto& s = table.summary();
    ordered_json j;
    j["annotations"] = s.annotations;
    j["samples"] = s.samples;
    j["groups"] = s.groups;
    j["predictions"] = s.predictions;
    j["items"] = s.items;
    j["double_annotated_samples"] = s.double_annotated_samples;
    j["samples_per_group"] = s.samples_per_group;
    j["samples_per_system"] = s.samples_per_system;
    j["predictions_per_judge"] = s.predictions_per_judge;
    ordered_json scored = ordered_json::object();
    for (const auto& [judge, counts] : s.scored_per_judge) {
      ordered_json row;
      for (Column col : kColumns) row[std::string(to_string(col))] = counts[index(col)];
      scored[judge] = row;
    }
    j["scored_per_judge"] = scored;
    return j;
  }

  void validate() {
    const EvalTable table = load(false, false);
    const std::string text = summary_json(table).dump(2) + "\n";
    if (c_.out) write_file(*c_.out / "summary.json", text);
    out_ << text;
  }

  std::vector<std::string> judges(const EvalTable& table) const {
    if (c_.judge) {
      if (!table.has_judge(*c_.judge)) fail(ErrorKind::kPrecondition, "unknown judge '" + *c_.judge + "'");
      return {*c_.judge};
    }
    auto all = table.judges();
    if (all.empty()) fail(ErrorKind::kPrecondition, "no predictions loaded");
    return all;
  }

  void metrics(const EvalTable& table) {
    MetricOptions opts;
    opts.srcc_mode = c_.srcc_rank_difference ? SrccMode::kRankDifference : SrccMode::kMidRankPearson;
    opts.fit.max_iterations = c_.fit_max_iter;
    const std::string mode = c_.srcc_rank_difference ? "rank_difference" : "mid_rank";
    const std::string flags = "srcc_mode=" + mode + " fit_max_iter=" + std::to_string(c_.fit_max_iter);

    std::string csv = header("metrics: SRCC/KRCC raw, PLCC/RMSE after 4-parameter logistic calibration, NA = unavailable",
                             flags);
    csv += csv_row({"judge", "column", "SRCC", "KRCC", "PLCC", "RMSE", "N", "fit_status"});
    ordered_json doc;
    doc["flags"] = {{"srcc_mode", mode}, {"fit_max_iter", c_.fit_max_iter}};
    doc["judges"] = ordered_json::array();
    for (const auto& judge : judges(table)) {
      const MetricReport rep = metric_report(table, judge, opts);
      ordered_json jj;
      jj["judge_id"] = judge;
      for (Column col : kColumns) {
        const MetricCell& cell = rep[col];
        csv += csv_row({judge, std::string(to_string(col)), num(cell.srcc), num(cell.krcc), num(cell.plcc),
                        num(cell.rmse), std::to_string(cell.n), cell.fit_status});
        ordered_json cj;
        cj["srcc"] = json_num(cell.srcc);
        cj["krcc"] = json_num(cell.krcc);
        cj["plcc"] = json_num(cell.plcc);
        cj["rmse"] = json_num(cell.rmse);
        cj["n"] = cell.n;
        cj["fit_status"] = cell.fit_status;
        if (cell.fit) {
          cj["fit"] = {{"beta1", cell.fit->beta1}, {"beta2", cell.fit->beta2}, {"beta3", cell.fit->beta3},
                       {"beta4", cell.fit->beta4}};
        } else {
          cj["fit"] = nullptr;
        }
        if (cell.affine) cj["affine"] = {{"intercept", cell.affine->intercept}, {"slope", cell.affine->slope}};
        if (!cell.note.empty()) cj["note"] = cell.note;
        jj["columns"][std::string(to_string(col))] = cj;
      }
      doc["judges"].push_back(jj);
    }
    emit("report.csv", csv);
    if (c_.out) write_file(*c_.out / "report.json", doc.dump(2) + "\n");
  }

  void pairacc(const EvalTable& table) {
    std::string csv = header("pairacc: within-group pairwise accuracy in [0,1], NA = unavailable",
                             "tie_eps=" + jsonl::format_double(c_.tie_eps));
    csv += csv_row({"judge", "IF", "RQ", "EE", "Overall"});
    for (const auto& judge : judges(table)) {
      const auto acc = per_dimension_pairacc(table, judge, c_.tie_eps);
      csv += csv_row({judge, num(acc[0]), num(acc[1]), num(acc[2]), num(acc[3])});
    }
    emit("pairacc.csv", csv);
  }

  void aggregate(const EvalTable& table) {
    const GeoWeights w(c_.weights[0], c_.weights[1], c_.weights[2]);
    const ScoreSource src = score_source(c_, table);
    const std::string flags = "source=" + src.name() + " weights=" + weights_text(c_);
    std::string csv =
        header("aggregate: GeoAgg and Mean on [1,4]; coverage_flag * = partial benchmark coverage", flags);
    csv += csv_row({"system", "GeoAgg", "Mean", "IF", "RQ", "EE", "N", "coverage_flag"});
    for (const auto& row : leaderboard(table, src, w)) {
      csv += csv_row({row.system_id, jsonl::format_double(row.geoagg), jsonl::format_double(row.mean.overall),
                      jsonl::format_double(row.mean.dims[0]), jsonl::format_double(row.mean.dims[1]),
                      jsonl::format_double(row.mean.dims[2]), std::to_string(row.n),
                      row.partial_coverage ? "*" : ""});
    }
    emit("leaderboard.csv", csv);
    if (!table.items().empty()) {
      std::string by_task = header("aggregate by task_type: GeoAgg on [1,4]", flags);
      by_task += csv_row({"system", "task_type", "GeoAgg", "N"});
      for (const auto& row : leaderboard_by_task(table, src, w)) {
        by_task += csv_row({row.system_id, row.task_type, jsonl::format_double(row.geoagg), std::to_string(row.n)});
      }
      emit("leaderboard_by_task.csv", by_task);
    }
  }

  void adjust(const EvalTable& table) {
    AdjustOptions opts;
    opts.clip_floor = c_.clip_floor;
    opts.mixed.max_iterations = c_.max_iter;
    opts.mixed.tolerance = c_.tol;
    const ScoreSource src = score_source(c_, table);
    const AdjustedLeaderboard lb = adjusted_leaderboard(table, src, opts);
    const std::string flags = "source=" + src.name() + " clip_floor=" + jsonl::format_double(c_.clip_floor) +
                              " max_iter=" + std::to_string(c_.max_iter) + " tol=" + jsonl::format_double(c_.tol);
    std::string csv = header(
        "adjust: coverage-adjusted means on [1,4]; adjusted_flag * = partial coverage; sigma_u2, sigma_e2 and "
        "converged are per dimension as IF;RQ;EE",
        flags);
    for (const auto& note : lb.notes) csv += "# note: " + note + "\n";
    csv += csv_row({"system", "IF", "RQ", "EE", "Overall-Mean", "adjusted_flag", "sigma_u2", "sigma_e2", "converged"});
    std::string su, se, cv;
    for (Dimension d : kDimensions) {
      const auto& f = lb.fits[index(d)].fit;
      const std::string sep = d == Dimension::kIF ? "" : ";";
      su += sep + (f ? jsonl::format_double(f->sigma_u2) : "NA");
      se += sep + (f ? jsonl::format_double(f->sigma_e2) : "NA");
      cv += sep + (f ? (f->converged ? "true" : "false") : "NA");
    }
    for (const auto& row : lb.rows) {
      csv += csv_row({row.system_id, num(row.dims[0]), num(row.dims[1]), num(row.dims[2]), num(row.overall_mean),
                      row.adjusted ? "*" : "", su, se, cv});
    }
    emit("adjusted.csv", csv);
  }

  void agreement(const EvalTable& table) {
    const auto agr = rater_agreement(table);
    std::string csv = header("agreement: percent of double-annotated samples, one decimal", "raters=2");
    csv += csv_row({"dimension", "exact_pct", "within1_pct", "n"});
    for (Dimension d : kDimensions) {
      const Agreement& a = agr[index(d)];
      csv += csv_row({std::string(to_string(d)), format_percent(a.exact_pct), format_percent(a.within1_pct),
                      std::to_string(a.n)});
    }
    emit("agreement.csv", csv);
  }

  std::vector<TrainingExample> training_set() {
    LoadOptions opts{c_.strict};
    const auto features = load_features(need(c_.features, "--features", c_), opts, &warnings_);
    const auto labels = load_annotations(need(c_.labels, "--labels", c_), opts, &warnings_);
    flush_warnings();
    std::map<std::string, const AnnotationRecord*> by_sample;
    for (const auto& a : labels) by_sample.emplace(a.sample_id, &a);
    std::vector<TrainingExample> data;
    for (const auto& f : features) {
      auto it = by_sample.find(f.sample_id);
      if (it == by_sample.end()) fail(ErrorKind::kOrphan, "feature row has no label: '" + f.sample_id + "'", f.where);
      if (!data.empty() && f.x.size() != data.front().x.size()) {
        fail(ErrorKind::kSchema, "feature length " + std::to_string(f.x.size()) + " differs from " +
                                     std::to_string(data.front().x.size()), f.where);
      }
      data.push_back(TrainingExample{f.sample_id, f.x, it->second->labels});
    }
    if (data.empty()) fail(ErrorKind::kPrecondition, "train-head: no feature rows");
    return data;
  }

  void train_head() {
    const auto data = training_set();
    TrainConfig tc;
    tc.epochs = c_.epochs;
    tc.seed = c_.seed;
    tc.hidden = c_.hidden;
    tc.batch_size = c_.batch_size;
    tc.learning_rate = c_.learning_rate;
    tc.normalization = c_.active_normalization ? LossNormalization::kActiveThresholds : LossNormalization::kAllThresholds;
    const TrainResult r = train(data, tc);
    const auto acc = hard_accuracy(r.params, data, threshold_mode());
    fs::path dest;
    if (c_.params) {
      dest = *c_.params;
    } else {
      dest = need(c_.out, "--params or --out", c_) / "head.params";
    }
    write_file(dest, r.params.to_json());
    ordered_json j;
    j["params"] = dest.generic_string();
    j["samples"] = data.size();
    j["epochs"] = c_.epochs;
    j["seed"] = c_.seed;
    j["initial_loss"] = r.initial_loss;
    j["final_loss"] = r.final_loss;
    for (Dimension d : kDimensions) j["train_accuracy"][std::string(to_string(d))] = acc[index(d)];
    out_ << j.dump() << "\n";
  }

  ThresholdMode threshold_mode() const {
    return c_.marginal_thresholds ? ThresholdMode::kMarginal : ThresholdMode::kConditional;
  }

  void score_head() {
    LoadOptions opts{c_.strict};
    const auto features = load_features(need(c_.features, "--features", c_), opts, &warnings_);
    std::map<std::string, std::string> system_of;
    if (c_.annotations) {
      for (const auto& a : load_annotations(*c_.annotations, opts, &warnings_)) system_of.emplace(a.sample_id, a.system_id);
    }
    flush_warnings();
    std::ifstream pf(need(c_.params, "--params", c_), std::ios::binary);
    std::stringstream buf;
    buf << pf.rdbuf();
    const OrdinalHeadParams params = OrdinalHeadParams::from_json(buf.str());

    std::vector<PredictionRecord> preds;
    for (const auto& f : features) {
      if (f.x.size() != params.input_dim()) {
        fail(ErrorKind::kSchema, "feature length " + std::to_string(f.x.size()) + " does not match head input " +
                                     std::to_string(params.input_dim()), f.where);
      }
      PredictionRecord p;
      p.sample_id = f.sample_id;
      if (c_.annotations) {
        auto it = system_of.find(f.sample_id);
        if (it == system_of.end()) fail(ErrorKind::kOrphan, "no annotation for '" + f.sample_id + "'", f.where);
        p.system_id = it->second;
      } else {
        p.system_id = "unassigned";
      }
      p.judge_id = c_.judge_id;
      const HeadOutput z = forward(params, f.x);
      for (Dimension d : kDimensions) {
        p.dims[index(d)] = Decimal::from_double(soft_score(z[index(d)], threshold_mode()).value());
      }
      preds.push_back(std::move(p));
    }
    emit("predictions.jsonl", serialize_predictions(preds));
  }

  void report() {
    const EvalTable table = load(false, false);
    need(c_.out, "--out", c_);
    write_file(*c_.out / "summary.json", summary_json(table).dump(2) + "\n");
    if (!table.judges().empty()) {
      metrics(table);
      pairacc(table);
    }
    aggregate(table);
    if (!table.items().empty()) adjust(table);
    if (table.summary().double_annotated_samples > 0) agreement(table);
  }

  const RunConfig& c_;
  std::ostream& out_;
  std::ostream& err_;
  std::vector<std::string> warnings_;
};

void report_error(std::ostream& err, const std::string& kind, const std::string& message, const Provenance& where = {}) {
  ordered_json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  j["error"]["file"] = where.empty() ? ordered_json(nullptr) : ordered_json(where.file);
  j["error"]["line"] = where.empty() ? ordered_json(nullptr) : ordered_json(where.line);
  err << j.dump() << "\n";
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> w;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw UsageError("--weights expects three numbers a,b,c");
    w.push_back(v);
  }
  if (w.size() != 3) throw UsageError("--weights expects three numbers a,b,c");
  return w;
}

}  // namespace

RunConfig parse_arguments(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Quality evaluation toolkit for rubric-scored video edits", "editscore"};
  app.require_subcommand(1);
  std::string weights;
  std::string srcc_mode = "mid_rank";
  std::string judge;

  struct Spec {
    Subcommand sub;
    const char* help;
  };
  const Spec specs[] = {
      {Subcommand::kValidate, "Load and join inputs, print dataset counts"},
      {Subcommand::kMetrics, "SRCC, KRCC, PLCC and RMSE per judge and dimension"},
      {Subcommand::kPairacc, "Group-wise pairwise accuracy per judge"},
      {Subcommand::kAggregate, "GeoAgg and Mean leaderboard, overall and by task type"},
      {Subcommand::kAdjust, "Coverage-adjusted per-system estimates"},
      {Subcommand::kAgreement, "Inter-annotator agreement on double-annotated samples"},
      {Subcommand::kTrainHead, "Train the ordinal scoring head on feature vectors"},
      {Subcommand::kScoreHead, "Score feature vectors with a trained head"},
      {Subcommand::kReport, "Every applicable report into one directory"},
  };
  std::vector<std::pair<CLI::App*, Subcommand>> subs;
  auto path_opt = [](CLI::App* s, const char* flag, std::optional<fs::path>& dst, const char* help) {
    return s->add_option_function<std::string>(flag, [&dst](const std::string& v) { dst = fs::path(v); }, help);
  };
  for (const auto& spec : specs) {
    CLI::App* s = app.add_subcommand(name(spec.sub), spec.help);
    subs.emplace_back(s, spec.sub);
    s->add_flag("--strict", c.strict, "Reject unknown keys in input files");
    s->add_option("--out", c.out, "Output directory");
    switch (spec.sub) {
      case Subcommand::kTrainHead:
        path_opt(s, "--features", c.features, "features.jsonl");
        path_opt(s, "--labels", c.labels, "annotations.jsonl with IF/RQ/EE labels");
        path_opt(s, "--params", c.params, "Where to write the head parameters (default OUT/head.params)");
        s->add_option("--epochs", c.epochs, "Training epochs")->capture_default_str();
        s->add_option("--seed", c.seed, "Random seed")->capture_default_str();
        s->add_option("--hidden", c.hidden, "Hidden width")->capture_default_str();
        s->add_option("--batch-size", c.batch_size, "Minibatch size")->capture_default_str();
        s->add_option("--lr", c.learning_rate, "Learning rate")->capture_default_str();
        s->add_flag("--active-normalization", c.active_normalization,
                    "Divide each dimension's loss by its active threshold count instead of 3");
        s->add_flag("--marginal", c.marginal_thresholds, "Read threshold logits as marginal P(Y>k)");
        break;
      case Subcommand::kScoreHead:
        path_opt(s, "--features", c.features, "features.jsonl");
        path_opt(s, "--params", c.params, "Trained head parameters");
        path_opt(s, "--annotations", c.annotations, "Optional annotations to take system_id from");
        s->add_option("--judge-id", c.judge_id, "judge_id for emitted predictions")->capture_default_str();
        s->add_flag("--marginal", c.marginal_thresholds, "Read threshold logits as marginal P(Y>k)");
        break;
      default:
        path_opt(s, "--annotations", c.annotations, "annotations.jsonl");
        path_opt(s, "--predictions", c.predictions, "predictions.jsonl");
        path_opt(s, "--items", c.items, "items.jsonl");
        s->add_option("--judge", judge, "Judge id; 'human' scores the labels themselves");
        s->add_option("--tie-eps", c.tie_eps, "Prediction tie tolerance for pairwise accuracy")->capture_default_str();
        s->add_option("--weights", weights, "GeoAgg weights a,b,c (default 2,1,1)");
        s->add_option("--clip-floor", c.clip_floor, "Propensity clip floor")->capture_default_str();
        s->add_option("--max-iter", c.max_iter, "Mixed-model iteration cap")->capture_default_str();
        s->add_option("--tol", c.tol, "Mixed-model relative log-likelihood tolerance")->capture_default_str();
        s->add_option("--fit-max-iter", c.fit_max_iter, "Logistic calibration iteration cap")->capture_default_str();
        s->add_option("--srcc-mode", srcc_mode, "mid_rank or rank_difference")
            ->check(CLI::IsMember({"mid_rank", "rank_difference"}))
            ->capture_default_str();
        break;
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    std::ostringstream text;
    app.exit(e, text, text);
    throw HelpRequested(text.str());
  }
  for (const auto& [s, sub] : subs) {
    if (s->parsed()) c.subcommand = sub;
  }
  if (!judge.empty()) c.judge = judge;
  if (!weights.empty()) {
    const auto w = parse_weights(weights);
    std::copy(w.begin(), w.end(), c.weights);
  }
  c.srcc_rank_difference = srcc_mode == "rank_difference";
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Session session(config, out, err);
    session.validate_inputs();
    session.dispatch();
    return 0;
  } catch (const UsageError& e) {
    report_error(err, "usage_error", e.what());
    return 1;
  } catch (const Error& e) {
    report_error(err, std::string(to_string(e.kind())), e.detail(), e.where());
    return 2;
  } catch (const std::exception& e) {
    report_error(err, "internal_error", e.what());
    return 2;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_arguments(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage_error", e.what());
    return 1;
  } catch (const UsageError& e) {
    report_error(err, "usage_error", e.what());
    return 1;
  }
  return run(config, out, err);
}

}  // namespace editscore::cli
