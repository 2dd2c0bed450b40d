#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "maintlm/ingest.hpp"

namespace maintlm {

// Raw-unit ranges used to map inputs and targets onto [-1, 1].
struct NormParams {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  friend bool operator==(const NormParams&, const NormParams&) = default;
};

struct DataSplit {
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> val_idx;
  std::vector<std::size_t> test_idx;
};

inline constexpr double kTrainFraction = 0.70;
inline constexpr double kValFraction = 0.15;

// Sizes (round-half-up of 70% and 15%, test gets the remainder).
struct SplitSizes {
  std::size_t train, val, test;
};
SplitSizes split_sizes(std::size_t n);

// Seeded Fisher-Yates shuffle of 0..n-1 cut into train/val/test. n >= 3.
DataSplit split_indices(std::size_t n, std::uint64_t seed);

NormParams fit_normalization(const std::vector<SamplePair>& samples);

// Affine map of [lo, hi] onto [-1, 1]; a degenerate range maps everything to 0.
double normalize(double v, double lo, double hi);
// Inverse of normalize; a degenerate range maps everything back to lo.
double denormalize(double v, double lo, double hi);

SamplePair normalize_sample(const SamplePair& s, const NormParams& p);
std::vector<SamplePair> normalize_samples(const std::vector<SamplePair>& samples,
                                          const NormParams& p);

std::vector<SamplePair> select(const std::vector<SamplePair>& samples,
                               const std::vector<std::size_t>& indices);

}  // namespace maintlm
