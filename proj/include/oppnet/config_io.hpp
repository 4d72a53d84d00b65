#pragma once

// Scenario files: UTF-8 text, `[section]` headers followed by `key = value`
// lines. `#` starts a comment. Sections are [field], [traffic], [router],
// [sim] and one [node] block per node (or per group of identical nodes when
// the block sets `count`). Unknown sections or keys are errors.
//
//   [field]    side
//   [traffic]  packet_size, generation_interval, ttl
//   [router]   router = epidemic|snw|prophet, snw_copies, prophet_p0,
//              prophet_beta, prophet_alpha
//   [sim]      sim_time, time_step (default 0.1), seed (default 1)
//   [node]     id, count, role, position = x,y, rf_range, bit_rate,
//              velocity, pause_min, pause_max, buffer_capacity,
//              bias_region = x_min,y_min,x_max,y_max, bias_degree, bias_sigma
//
// A satellite without `bias_sigma` gets the sigma that puts 72.5% of the
// untruncated selector mass below its degree (degrees in (0.5, 1)); degrees of
// exactly 0 or 1 default to sigma 0.5, where sigma has no effect.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "oppnet/scenario.hpp"

namespace oppnet {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);

  /// 1-based line number; 0 when the problem is not tied to one line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses and validates. Throws ParseError or ScenarioError.
ScenarioConfig parse_scenario(std::string_view text);
ScenarioConfig load_scenario_file(const std::filesystem::path& path);

/// Canonical text form: one [node] block per node, every value explicit.
std::string emit_scenario(const ScenarioConfig& config);

}  // namespace oppnet
