#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "editscore/synthetic.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using editscore::cli::main_entry;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "editscore");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("editscore_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string fixture(const char* name) const { return (fixtures::fixture_dir() / name).string(); }
  fs::path write(const char* name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
    return dir_ / name;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ValidateCountsTheFixture) {
  const auto r = invoke({"validate", "--annotations", fixture("annotations.jsonl")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["samples"], 12);
  EXPECT_EQ(j["groups"], 4);
}

TEST_F(CliTest, PerfectJudgeScoresOne) {
  std::ifstream in(fixture("annotations.jsonl"));
  std::string line, preds;
  while (std::getline(in, line)) {
    auto a = nlohmann::json::parse(line);
    preds += nlohmann::json{{"sample_id", a["sample_id"]},
                            {"system_id", a["system_id"]},
                            {"judge_id", "oracle"},
                            {"IF", a["IF"]},
                            {"RQ", a["RQ"]},
                            {"EE", a["EE"]}}
                 .dump() +
             "\n";
  }
  const auto p = write("pred.jsonl", preds);
  const auto r = invoke({"metrics", "--annotations", fixture("annotations.jsonl"), "--predictions", p.string(),
                         "--out", (dir_ / "out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir_ / "out" / "report.json"));
  for (const char* col : {"IF", "RQ", "EE", "Overall"}) {
    ASSERT_EQ(j["judges"][0]["judge_id"], "oracle");
    const auto& cell = j["judges"][0]["columns"][col];
    EXPECT_DOUBLE_EQ(cell["srcc"].get<double>(), 1.0) << col;
    EXPECT_DOUBLE_EQ(cell["krcc"].get<double>(), 1.0) << col;
  }
}

TEST_F(CliTest, ErrorsAreJsonWithExitCodes) {
  auto r = invoke({"metrics", "--annotations", (dir_ / "missing.jsonl").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(nlohmann::json::parse(r.err).contains("error"));

  r = invoke({"bogus"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"]["kind"], "usage_error");

  r = invoke({"metrics", "--annotations", fixture("annotations.jsonl")});
  EXPECT_EQ(r.code, 1);

  const auto bad = write("bad.jsonl", "{\"sample_id\":\"a\",\"group_id\":\"g\",\"system_id\":\"s\",\"IF\":5,\"RQ\":1,\"EE\":1}\n");
  r = invoke({"validate", "--annotations", bad.string()});
  EXPECT_EQ(r.code, 2);
  const auto err = nlohmann::json::parse(r.err)["error"];
  EXPECT_EQ(err["line"], 1);

  r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("report"), std::string::npos);
}

TEST_F(CliTest, ReportIsDeterministicAndLeavesInputsAlone) {
  const std::string before = slurp(fixture("annotations.jsonl")) + slurp(fixture("predictions.jsonl")) +
                             slurp(fixture("items.jsonl"));
  std::map<std::string, std::string> first;
  for (const char* run : {"a", "b"}) {
    const auto out = dir_ / run;
    const auto r = invoke({"report", "--annotations", fixture("annotations.jsonl"), "--predictions",
                           fixture("predictions.jsonl"), "--items", fixture("items.jsonl"), "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::directory_iterator(out)) files[entry.path().filename().string()] = slurp(entry.path());
    if (first.empty()) {
      first = files;
      for (const char* f : {"report.csv", "report.json", "pairacc.csv", "leaderboard.csv", "adjusted.csv"}) {
        EXPECT_TRUE(files.contains(f)) << f;
      }
    } else {
      EXPECT_EQ(files, first);
    }
  }
  EXPECT_EQ(slurp(fixture("annotations.jsonl")) + slurp(fixture("predictions.jsonl")) +
                slurp(fixture("items.jsonl")),
            before);
  const std::string board = first["leaderboard.csv"];
  EXPECT_EQ(board.rfind("# editscore", 0), 0u);
}

TEST_F(CliTest, TrainThenScoreHead) {
  const auto data = editscore::label_planted_dataset(120, 3);
  std::string features, labels;
  for (const auto& ex : data) {
    features += nlohmann::json{{"sample_id", ex.sample_id}, {"x", ex.x}}.dump() + "\n";
    labels += nlohmann::json{{"sample_id", ex.sample_id},
                             {"group_id", "g"},
                             {"system_id", "sys"},
                             {"IF", ex.labels.scores[0].value()},
                             {"RQ", ex.labels.scores[1].value()},
                             {"EE", ex.labels.scores[2].value()}}
                  .dump() +
              "\n";
  }
  const auto f = write("features.jsonl", features);
  const auto l = write("labels.jsonl", labels);
  const auto params = dir_ / "head.params";
  auto r = invoke({"train-head", "--features", f.string(), "--labels", l.string(), "--params", params.string(),
                   "--epochs", "10", "--hidden", "8", "--out", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_TRUE(fs::exists(params));
  const auto summary = nlohmann::json::parse(r.out);
  EXPECT_LT(summary["final_loss"].get<double>(), summary["initial_loss"].get<double>());

  r = invoke({"score-head", "--features", f.string(), "--params", params.string(), "--annotations", l.string(),
              "--out", (dir_ / "scored").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(dir_ / "scored" / "predictions.jsonl");
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["judge_id"], "head");
    EXPECT_EQ(j["system_id"], "sys");
    for (const char* d : {"IF", "RQ", "EE"}) {
      EXPECT_GE(j[d].get<double>(), 1.0);
      EXPECT_LE(j[d].get<double>(), 4.0);
    }
    ++n;
  }
  EXPECT_EQ(n, data.size());
  // The emitted file feeds straight back into metrics.
  r = invoke({"metrics", "--annotations", l.string(), "--predictions", (dir_ / "scored" / "predictions.jsonl").string(),
              "--out", (dir_ / "m").string()});
  EXPECT_EQ(r.code, 0) << r.err;
}
