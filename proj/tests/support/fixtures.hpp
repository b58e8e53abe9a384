#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "editscore/dataset.hpp"
#include "editscore/rng.hpp"

namespace fixtures {

inline editscore::AnnotationRecord annotation(std::string sample, std::string group, std::string system, int a,
                                              int b, int c) {
  using editscore::OrdinalScore;
  return {std::move(sample), std::move(group), std::move(system), std::nullopt,
          editscore::OrdinalTriplet(OrdinalScore(a), OrdinalScore(b), OrdinalScore(c)), {}};
}

inline editscore::PredictionRecord prediction(std::string sample, std::string system, std::string judge, double a,
                                              double b, double c) {
  editscore::PredictionRecord p;
  p.sample_id = std::move(sample);
  p.system_id = std::move(system);
  p.judge_id = std::move(judge);
  p.dims = {editscore::Decimal::from_double(a), editscore::Decimal::from_double(b),
            editscore::Decimal::from_double(c)};
  return p;
}

inline editscore::PredictionRecord scalar_prediction(std::string sample, std::string system, std::string judge,
                                                     double overall) {
  editscore::PredictionRecord p;
  p.sample_id = std::move(sample);
  p.system_id = std::move(system);
  p.judge_id = std::move(judge);
  p.overall = editscore::Decimal::from_double(overall);
  return p;
}

inline std::filesystem::path source_dir() { return EDITSCORE_SOURCE_DIR; }
inline std::filesystem::path fixture_dir() { return source_dir() / "data" / "fixture"; }

// Two systems scored by a judge on a benchmark whose item difficulty depends
// on task type. System "A" covers every item; system "B" is observed with a
// probability that falls with difficulty, so its observed mean is biased up.
struct CoverageSimulation {
  editscore::EvalTable table;
  double mu_a = 0.0;
  double mu_b = 0.0;
};

inline CoverageSimulation coverage_simulation(std::uint64_t seed, std::size_t n_items = 200) {
  editscore::Rng rng(seed);
  const std::vector<std::string> tasks = {"style", "attribute", "creative"};
  const double shift[] = {0.4, 0.0, -0.4};
  const double observe[] = {0.9, 0.6, 0.2};
  CoverageSimulation sim;
  sim.mu_a = 2.8;
  sim.mu_b = 2.4;

  std::vector<std::size_t> task(n_items);
  std::vector<double> u(n_items);
  double mean_u = 0.0;
  for (std::size_t i = 0; i < n_items; ++i) {
    task[i] = rng.index(tasks.size());
    u[i] = shift[task[i]] + rng.normal(0.0, 0.2);
    mean_u += u[i];
  }
  mean_u /= static_cast<double>(n_items);
  std::vector<editscore::ItemCovariates> items;
  std::vector<editscore::AnnotationRecord> ann;
  std::vector<editscore::PredictionRecord> pred;
  for (std::size_t i = 0; i < n_items; ++i) {
    u[i] -= mean_u;
    const std::string item = "item" + std::to_string(i);
    items.push_back({item, tasks[task[i]], 5 + rng.index(30), rng.index(4), {}});
    for (const char* system : {"A", "B"}) {
      const bool is_a = system[0] == 'A';
      if (!is_a && !rng.bernoulli(observe[task[i]])) continue;
      const std::string sample = std::string(system) + "-" + item;
      ann.push_back(annotation(sample, item, system, 3, 3, 3));
      const double mu = is_a ? sim.mu_a : sim.mu_b;
      double y[3];
      for (double& v : y) v = std::clamp(mu + u[i] + rng.normal(0.0, 0.15), 1.0, 4.0);
      pred.push_back(prediction(sample, system, "sim", y[0], y[1], y[2]));
    }
  }
  sim.table = editscore::validate_dataset(std::move(ann), std::move(pred),
                                          editscore::ItemIndex(std::move(items), editscore::default_task_vocabulary(),
                                                               "words"));
  return sim;
}

}  // namespace fixtures
