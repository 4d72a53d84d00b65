#pragma once

// Locale-independent number text. Doubles are written in the shortest form
// that parses back to the same value.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oppnet {

std::string format_number(double value);
std::string format_number(std::uint64_t value);

std::optional<double> parse_double(std::string_view text);
std::optional<std::uint64_t> parse_uint(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char delimiter);

}  // namespace oppnet
