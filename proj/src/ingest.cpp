#include "maintlm/ingest.hpp"

#include <array>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "maintlm/error.hpp"
#include "maintlm/numfmt.hpp"

namespace maintlm {
namespace {

constexpr const char* kModule = "ingest";

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
  throw Error(kModule, ErrorKind::kParse,
              "line " + std::to_string(line_no) + ": " + what);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

long long parse_count(std::string_view field, const char* name, std::size_t line_no) {
  const auto value = parse_integer(field);
  if (!value) fail_line(line_no, std::string(name) + " is not an integer: '" +
                                     std::string(field) + "'");
  if (*value < 0) fail_line(line_no, std::string(name) + " is negative");
  return *value;
}

double parse_days(std::string_view field, const char* name, std::size_t line_no) {
  const auto value = parse_double(field);
  if (!value || !std::isfinite(*value)) {
    fail_line(line_no, std::string(name) + " is not a finite number: '" +
                           std::string(field) + "'");
  }
  if (*value < 0.0) fail_line(line_no, std::string(name) + " is negative");
  return *value;
}

}  // namespace

std::string_view variant_name(InputVariant variant) {
  switch (variant) {
    case InputVariant::kEnhancementsOnly:
      return "enh";
    case InputVariant::kCorrectionsOnly:
      return "corr";
    case InputVariant::kSum:
      return "sum";
  }
  return "sum";
}

InputVariant parse_variant(std::string_view name) {
  if (name == "enh") return InputVariant::kEnhancementsOnly;
  if (name == "corr") return InputVariant::kCorrectionsOnly;
  if (name == "sum") return InputVariant::kSum;
  throw Error(kModule, ErrorKind::kInvalidArgument,
              "unknown input variant '" + std::string(name) + "' (expected sum|enh|corr)");
}

std::vector<MaintenanceRecord> parse_change_log(std::istream& in) {
  std::vector<MaintenanceRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  bool saw_blank = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!saw_header) {
      if (line != kChangeLogHeader) {
        fail_line(line_no, "expected header '" + std::string(kChangeLogHeader) + "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) {
      saw_blank = true;
      continue;
    }
    // Only a trailing blank line is tolerated.
    if (saw_blank) fail_line(line_no - 1, "blank line inside data");

    const auto fields = split_commas(line);
    if (fields.size() != 5) {
      fail_line(line_no, "expected 5 columns, found " + std::to_string(fields.size()));
    }
    MaintenanceRecord rec;
    rec.period_id = std::string(fields[0]);
    if (rec.period_id.empty()) fail_line(line_no, "empty period label");
    rec.enhancements = parse_count(fields[1], "enhancements", line_no);
    rec.corrections = parse_count(fields[2], "corrections", line_no);
    rec.days_enh = parse_days(fields[3], "days_enh", line_no);
    rec.days_corr = parse_days(fields[4], "days_corr", line_no);
    if (!seen.insert(rec.period_id).second) {
      throw Error(kModule, ErrorKind::kDuplicate,
                  "line " + std::to_string(line_no) + ": duplicate period '" +
                      rec.period_id + "'");
    }
    records.push_back(std::move(rec));
  }
  if (!saw_header) fail_line(1, "missing header");
  return records;
}

std::vector<MaintenanceRecord> parse_change_log(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_change_log(in);
}

void write_change_log(std::ostream& out, const std::vector<MaintenanceRecord>& records) {
  out << kChangeLogHeader << '\n';
  for (const auto& r : records) {
    out << r.period_id << ',' << r.enhancements << ',' << r.corrections << ','
        << format_double(r.days_enh) << ',' << format_double(r.days_corr) << '\n';
  }
}

std::string change_log_to_string(const std::vector<MaintenanceRecord>& records) {
  std::ostringstream out;
  write_change_log(out, records);
  return out.str();
}

SamplePair make_sample(const MaintenanceRecord& record, InputVariant variant) {
  switch (variant) {
    case InputVariant::kEnhancementsOnly:
      return {static_cast<double>(record.enhancements), record.days_enh};
    case InputVariant::kCorrectionsOnly:
      return {static_cast<double>(record.corrections), record.days_corr};
    case InputVariant::kSum:
      break;
  }
  return {static_cast<double>(record.enhancements + record.corrections),
          record.days_enh + record.days_corr};
}

std::vector<SamplePair> build_samples(const std::vector<MaintenanceRecord>& records,
                                      InputVariant variant) {
  if (records.empty()) {
    throw Error(kModule, ErrorKind::kEmptyInput, "no maintenance records to build samples from");
  }
  std::vector<SamplePair> samples;
  samples.reserve(records.size());
  for (const auto& r : records) samples.push_back(make_sample(r, variant));
  return samples;
}

}  // namespace maintlm
