#include "maintlm/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maintlm/error.hpp"
#include "maintlm/random.hpp"

namespace maintlm {
namespace {

constexpr const char* kModule = "synth";

[[noreturn]] void bad_spec(const std::string& what) {
  throw Error(kModule, ErrorKind::kInvalidArgument, "invalid synth spec: " + what);
}

// Variance of the discrete uniform distribution on {lo, ..., hi}.
double uniform_int_variance(const IntRange& r) {
  const double m = static_cast<double>(r.hi - r.lo + 1);
  return (m * m - 1.0) / 12.0;
}

std::string period_label(std::size_t i) {
  std::string s = std::to_string(i + 1);
  if (s.size() < 3) s.insert(0, 3 - s.size(), '0');
  return "p" + s;
}

}  // namespace

void validate(const SynthSpec& spec) {
  if (spec.n < 3) bad_spec("n must be >= 3");
  if (spec.e_range.lo < 0 || spec.e_range.lo > spec.e_range.hi) {
    bad_spec("enhancement range must satisfy 0 <= lo <= hi");
  }
  if (spec.f_range.lo < 0 || spec.f_range.lo > spec.f_range.hi) {
    bad_spec("correction range must satisfy 0 <= lo <= hi");
  }
  if (!(spec.days_per_unit >= 0.0) || !std::isfinite(spec.days_per_unit)) {
    bad_spec("days_per_unit must be a finite value >= 0");
  }
  if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma)) {
    bad_spec("noise_sigma must be a finite value >= 0");
  }
}

std::vector<MaintenanceRecord> generate(const SynthSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);
  std::vector<MaintenanceRecord> records;
  records.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    MaintenanceRecord r;
    r.period_id = period_label(i);
    r.enhancements = rng.uniform_int(spec.e_range.lo, spec.e_range.hi);
    r.corrections = rng.uniform_int(spec.f_range.lo, spec.f_range.hi);
    const double noise_e = spec.noise_sigma * rng.normal();
    const double noise_f = spec.noise_sigma * rng.normal();
    r.days_enh = std::max(0.0, spec.days_per_unit * static_cast<double>(r.enhancements) + noise_e);
    r.days_corr =
        std::max(0.0, spec.days_per_unit * static_cast<double>(r.corrections) + noise_f);
    records.push_back(std::move(r));
  }
  return records;
}

double noise_sigma_for_correlation(const SynthSpec& spec, double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw Error(kModule, ErrorKind::kInvalidArgument, "target correlation must lie in (0, 1]");
  }
  const double signal_var = spec.days_per_unit * spec.days_per_unit *
                            (uniform_int_variance(spec.e_range) + uniform_int_variance(spec.f_range));
  // rho^2 = S / (S + 2 sigma^2)  =>  sigma^2 = S (1 - rho^2) / (2 rho^2)
  return std::sqrt(signal_var * (1.0 - rho * rho) / (2.0 * rho * rho));
}

double population_correlation(const SynthSpec& spec) {
  const double signal_var = spec.days_per_unit * spec.days_per_unit *
                            (uniform_int_variance(spec.e_range) + uniform_int_variance(spec.f_range));
  const double total = signal_var + 2.0 * spec.noise_sigma * spec.noise_sigma;
  if (total == 0.0) return 0.0;
  return std::sqrt(signal_var / total);
}

}  // namespace maintlm
