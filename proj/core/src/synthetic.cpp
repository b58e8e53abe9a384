#include "editscore/synthetic.hpp"

#include <string>

#include "editscore/error.hpp"
#include "editscore/rng.hpp"

namespace editscore {

std::vector<TrainingExample> label_planted_dataset(std::size_t n, std::uint64_t seed,
                                                   const SyntheticConfig& config) {
  const std::size_t block = config.input_dim / kNumDimensions;
  if (block == 0) fail(ErrorKind::kPrecondition, "synthetic: input_dim must be >= 3");
  Rng rng(seed);
  std::vector<TrainingExample> out;
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    PerDimension<int> y{};
    for (auto& v : y) v = 1 + static_cast<int>(rng.index(4));
    std::vector<double> x(config.input_dim);
    for (std::size_t j = 0; j < config.input_dim; ++j) {
      const std::size_t d = j / block;
      const double mean = d < kNumDimensions ? config.shift * (y[d] - 2.5) : 0.0;
      x[j] = rng.normal(mean, config.noise_sd);
    }
    out.push_back(TrainingExample{"syn-" + std::to_string(s), std::move(x),
                                  OrdinalTriplet(OrdinalScore(y[0]), OrdinalScore(y[1]), OrdinalScore(y[2]))});
  }
  return out;
}

SyntheticSplit bundled_synthetic_split(std::uint64_t seed) {
  SyntheticSplit split;
  split.train = label_planted_dataset(600, seed);
  split.test = label_planted_dataset(200, seed + 1);
  for (auto& ex : split.test) ex.sample_id = "test-" + ex.sample_id.substr(4);
  return split;
}

}  // namespace editscore
