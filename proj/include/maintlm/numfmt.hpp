#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace maintlm {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

// Strict full-string parse; leading/trailing garbage is rejected.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

// Fixed-point formatting used for plot coordinates and labels.
std::string format_fixed(double value, int decimals);

}  // namespace maintlm
