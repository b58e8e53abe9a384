#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace editscore::cli {

enum class Subcommand { kValidate, kMetrics, kPairacc, kAggregate, kAdjust, kAgreement, kTrainHead, kScoreHead, kReport };

struct RunConfig {
  Subcommand subcommand = Subcommand::kValidate;

  std::optional<std::filesystem::path> annotations;
  std::optional<std::filesystem::path> predictions;
  std::optional<std::filesystem::path> items;
  std::optional<std::filesystem::path> features;
  std::optional<std::filesystem::path> labels;
  std::optional<std::filesystem::path> params;
  std::optional<std::filesystem::path> out;

  bool strict = false;
  // Judge for metrics/pairacc (all judges when unset); score source for
  // aggregate/adjust ("human" when unset).
  std::optional<std::string> judge;
  double tie_eps = 0.0;
  double weights[3] = {2.0, 1.0, 1.0};
  double clip_floor = 0.05;
  int max_iter = 500;
  double tol = 1e-8;
  int fit_max_iter = 200;
  bool srcc_rank_difference = false;

  std::size_t epochs = 60;
  std::uint64_t seed = 17;
  std::size_t hidden = 64;
  std::size_t batch_size = 16;
  double learning_rate = 0.05;
  bool active_normalization = false;
  bool marginal_thresholds = false;
  std::string judge_id = "head";
};

struct HelpRequested : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses argv into a config. Throws CLI::ParseError (and friends) on usage
// errors; `--help` surfaces as HelpRequested carrying the help text.
RunConfig parse_arguments(int argc, const char* const* argv);

// Runs one subcommand. Returns the process exit status: 0 on success, 1 on a
// usage error, 2 on a data or numeric error. Errors are written to `err` as a
// single JSON object per line.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// argv-level entry point used by main().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace editscore::cli
