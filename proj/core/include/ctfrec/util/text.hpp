#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctfrec::util {

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
// Splits on runs of whitespace; no empty tokens.
std::vector<std::string> split_ws(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::optional<double> parse_double(std::string_view s);
std::optional<int64_t> parse_int(std::string_view s);

// Fixed-point decimal rendering ("%.*f"); the single formatting used anywhere
// a float is written to a file, so exports are byte-stable.
std::string format_fixed(double v, int digits);
// Shortest round-trip rendering ("%.17g" trimmed) for diagnostics.
std::string format_full(double v);

}  // namespace ctfrec::util
