#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "maintlm/ingest.hpp"

namespace maintlm {

struct IntRange {
  long long lo = 0;
  long long hi = 0;
};

// Synthetic change-log generator. Counts are uniform on their closed ranges;
// days are days_per_unit * count plus Gaussian noise, clamped at zero.
struct SynthSpec {
  std::size_t n = 56;
  IntRange e_range{20, 40};
  IntRange f_range{20, 40};
  double days_per_unit = 2.5;
  double noise_sigma = 0.0;
  std::uint64_t seed = 1;
};

void validate(const SynthSpec& spec);

std::vector<MaintenanceRecord> generate(const SynthSpec& spec);

// Per-component noise sigma giving population correlation rho between the
// Sum-variant input X = e + f and output Y = days_enh + days_corr, ignoring
// the zero clamp:
//   rho = d * sd(X) / sqrt(d^2 var(X) + 2 sigma^2).
double noise_sigma_for_correlation(const SynthSpec& spec, double rho);

// Population correlation implied by a spec (inverse of the above).
double population_correlation(const SynthSpec& spec);

}  // namespace maintlm
