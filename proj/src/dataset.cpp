#include "maintlm/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "maintlm/error.hpp"
#include "maintlm/random.hpp"

namespace maintlm {
namespace {

constexpr const char* kModule = "dataset";

void check_range(double lo, double hi) {
  if (!(lo <= hi)) {
    throw Error(kModule, ErrorKind::kInvalidArgument, "normalization range has lo > hi");
  }
}

}  // namespace

SplitSizes split_sizes(std::size_t n) {
  // Half-up rounding of 0.7n and 0.15n in exact integer arithmetic; the
  // binary value of 0.7 sits just below 7/10 and would round 0.7n=x.5 down.
  const std::size_t train = (7 * n + 5) / 10;
  const std::size_t val = (3 * n + 10) / 20;
  return {train, val, n - train - val};
}

DataSplit split_indices(std::size_t n, std::uint64_t seed) {
  if (n < 3) {
    throw Error(kModule, ErrorKind::kTooFewSamples,
                "split requires n >= 3 samples, got " + std::to_string(n));
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(perm[i], perm[j]);
  }
  const auto sizes = split_sizes(n);
  DataSplit split;
  const auto train_end = perm.begin() + static_cast<std::ptrdiff_t>(sizes.train);
  const auto val_end = train_end + static_cast<std::ptrdiff_t>(sizes.val);
  split.train_idx.assign(perm.begin(), train_end);
  split.val_idx.assign(train_end, val_end);
  split.test_idx.assign(val_end, perm.end());
  return split;
}

NormParams fit_normalization(const std::vector<SamplePair>& samples) {
  if (samples.empty()) {
    throw Error(kModule, ErrorKind::kEmptyInput, "cannot fit normalization on no samples");
  }
  NormParams p{samples[0].x, samples[0].x, samples[0].y, samples[0].y};
  for (const auto& s : samples) {
    p.x_min = std::min(p.x_min, s.x);
    p.x_max = std::max(p.x_max, s.x);
    p.y_min = std::min(p.y_min, s.y);
    p.y_max = std::max(p.y_max, s.y);
  }
  return p;
}

double normalize(double v, double lo, double hi) {
  check_range(lo, hi);
  if (lo == hi) return 0.0;
  return 2.0 * (v - lo) / (hi - lo) - 1.0;
}

double denormalize(double v, double lo, double hi) {
  check_range(lo, hi);
  if (lo == hi) return lo;
  return (v + 1.0) * (hi - lo) / 2.0 + lo;
}

SamplePair normalize_sample(const SamplePair& s, const NormParams& p) {
  return {normalize(s.x, p.x_min, p.x_max), normalize(s.y, p.y_min, p.y_max)};
}

std::vector<SamplePair> normalize_samples(const std::vector<SamplePair>& samples,
                                          const NormParams& p) {
  std::vector<SamplePair> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(normalize_sample(s, p));
  return out;
}

std::vector<SamplePair> select(const std::vector<SamplePair>& samples,
                               const std::vector<std::size_t>& indices) {
  std::vector<SamplePair> out;
  out.reserve(indices.size());
  for (auto i : indices) {
    if (i >= samples.size()) {
      throw Error(kModule, ErrorKind::kInvalidArgument, "split index out of range");
    }
    out.push_back(samples[i]);
  }
  return out;
}

}  // namespace maintlm
