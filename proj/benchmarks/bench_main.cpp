#include <benchmark/benchmark.h>

#include <cmath>

#include "editscore/calibration.hpp"
#include "editscore/correlation.hpp"
#include "editscore/head_training.hpp"
#include "editscore/mixed_model.hpp"
#include "editscore/preference.hpp"
#include "editscore/rng.hpp"
#include "editscore/synthetic.hpp"

using namespace editscore;

namespace {

void correlated(std::size_t n, std::vector<double>& pred, std::vector<double>& human) {
  Rng rng(n);
  pred.resize(n);
  human.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    human[i] = static_cast<double>(1 + rng.index(4));
    pred[i] = human[i] + rng.normal(0, 0.6);
  }
}

void BM_KendallTauB(benchmark::State& state) {
  std::vector<double> pred, human;
  correlated(static_cast<std::size_t>(state.range(0)), pred, human);
  for (auto _ : state) benchmark::DoNotOptimize(krcc_tau_b(pred, human));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallTauB)->RangeMultiplier(4)->Range(256, 65536)->Complexity(benchmark::oNLogN);

void BM_Srcc(benchmark::State& state) {
  std::vector<double> pred, human;
  correlated(static_cast<std::size_t>(state.range(0)), pred, human);
  for (auto _ : state) benchmark::DoNotOptimize(srcc(pred, human));
}
BENCHMARK(BM_Srcc)->Arg(550)->Arg(16384);

void BM_Logistic4pFit(benchmark::State& state) {
  std::vector<double> pred, human;
  correlated(static_cast<std::size_t>(state.range(0)), pred, human);
  for (auto _ : state) benchmark::DoNotOptimize(fit_logistic_4p(pred, human));
}
BENCHMARK(BM_Logistic4pFit)->Arg(550)->Arg(4096);

void BM_PairwiseAccuracy(benchmark::State& state) {
  Rng rng(3);
  std::vector<RankingGroup> groups(static_cast<std::size_t>(state.range(0)));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    groups[g].group_id = "g" + std::to_string(g);
    for (int m = 0; m < 4; ++m) {
      const double h = static_cast<double>(1 + rng.index(4));
      groups[g].members.push_back({"s", h, h + rng.normal(0, 0.5)});
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_accuracy(groups));
}
BENCHMARK(BM_PairwiseAccuracy)->Arg(150)->Arg(5000);

void BM_MixedModelFit(benchmark::State& state) {
  Rng rng(4);
  std::vector<MixedRow> rows;
  const int items = static_cast<int>(state.range(0));
  for (int i = 0; i < items; ++i) {
    const double u = rng.normal(0, 0.4);
    for (int s = 0; s < 8; ++s) {
      if (s > 3 && !rng.bernoulli(0.6)) continue;
      rows.push_back({"sys" + std::to_string(s), "i" + std::to_string(i), 2.0 + 0.1 * s + u + rng.normal(0, 0.3),
                      rng.uniform(1.0, 3.0)});
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(fit_mixed_weighted(rows));
}
BENCHMARK(BM_MixedModelFit)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_HeadTrainingEpoch(benchmark::State& state) {
  const auto split = bundled_synthetic_split();
  TrainConfig cfg;
  cfg.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(train(split.train, cfg));
}
BENCHMARK(BM_HeadTrainingEpoch)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
