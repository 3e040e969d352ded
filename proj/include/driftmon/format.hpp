#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace driftmon {

// Shortest round-trip decimal representation of a double. Used everywhere a
// floating-point value is written to a text artifact (CSV, SVG) so that
// identical inputs always serialize to identical bytes.
std::string fmt_double(double v);

// Fixed-precision formatting (SVG coordinates). Deterministic, no locale.
std::string fmt_fixed(double v, int precision);

// Strict numeric parsing helpers. The whole string must be consumed.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

// Whitespace trim (ASCII), used by the CSV and stream readers.
std::string_view trim(std::string_view s);

} // namespace driftmon
