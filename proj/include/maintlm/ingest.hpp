#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace maintlm {

// One period of a maintenance change log: how many enhancements and
// corrections were handled, and the days spent on each kind.
struct MaintenanceRecord {
  std::string period_id;
  long long enhancements = 0;
  long long corrections = 0;
  double days_enh = 0.0;
  double days_corr = 0.0;

  friend bool operator==(const MaintenanceRecord&, const MaintenanceRecord&) = default;
};

enum class InputVariant { kEnhancementsOnly, kCorrectionsOnly, kSum };

// Short CLI spelling: "enh", "corr", "sum".
std::string_view variant_name(InputVariant variant);
InputVariant parse_variant(std::string_view name);

// A single (count, days) training point.
struct SamplePair {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const SamplePair&, const SamplePair&) = default;
};

inline constexpr std::string_view kChangeLogHeader =
    "period,enhancements,corrections,days_enh,days_corr";

std::vector<MaintenanceRecord> parse_change_log(std::istream& in);
std::vector<MaintenanceRecord> parse_change_log(std::string_view text);

void write_change_log(std::ostream& out, const std::vector<MaintenanceRecord>& records);
std::string change_log_to_string(const std::vector<MaintenanceRecord>& records);

SamplePair make_sample(const MaintenanceRecord& record, InputVariant variant);
std::vector<SamplePair> build_samples(const std::vector<MaintenanceRecord>& records,
                                      InputVariant variant);

}  // namespace maintlm
