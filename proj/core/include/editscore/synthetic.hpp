#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "editscore/ordinal_head.hpp"

namespace editscore {

// Label-planted Gaussian features: each dimension's label is drawn uniformly
// from {1..4} and shifts its own block of floor(D / 3) features by
// shift * (label - 2.5); every feature carries unit Gaussian noise. Trailing
// features beyond the three blocks are pure noise.
struct SyntheticConfig {
  std::size_t input_dim = 16;
  double shift = 2.0;
  double noise_sd = 1.0;
};

std::vector<TrainingExample> label_planted_dataset(std::size_t n, std::uint64_t seed,
                                                   const SyntheticConfig& config = {});

// The bundled split: 600 training and 200 test samples, D = 16.
struct SyntheticSplit {
  std::vector<TrainingExample> train;
  std::vector<TrainingExample> test;
};

inline constexpr std::uint64_t kDefaultSyntheticSeed = 2026;

SyntheticSplit bundled_synthetic_split(std::uint64_t seed = kDefaultSyntheticSeed);

}  // namespace editscore
