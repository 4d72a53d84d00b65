#pragma once

// Fixed-schema CSV report, one row per simulation run. Undefined values are
// written as NA; doubles use the shortest text that round-trips.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oppnet/analytics.hpp"
#include "oppnet/engine/simulator.hpp"

namespace oppnet::cli {

inline constexpr std::string_view kReportHeader =
    "scenario,seed,router,mobility,area_side,created,delivered,relayed,dropped_ttl,dropped_buffer,"
    "delivery_probability,overhead_ratio,avg_latency_s,encounters_src,encounters_dst";

struct RowMetrics {
  std::uint64_t created = 0;
  std::uint64_t delivered = 0;
  std::uint64_t relayed = 0;
  std::uint64_t dropped_ttl = 0;
  std::uint64_t dropped_buffer = 0;
  double delivery_probability = 0.0;
  std::optional<double> overhead_ratio;
  std::optional<double> avg_latency_s;
  std::uint64_t encounters_src = 0;
  std::uint64_t encounters_dst = 0;

  friend bool operator==(const RowMetrics&, const RowMetrics&) = default;
};

struct ReportRow {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string router;
  std::string mobility;  // biased | unbiased
  double area_side = 0.0;
  std::optional<RowMetrics> metrics;  // empty when the run failed

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

std::string_view mobility_label(const ScenarioConfig& config);

ReportRow make_row(std::string scenario, const ScenarioConfig& config,
                   const engine::RunResult& result);

std::string emit_report(std::span<const ReportRow> rows);

/// Throws std::invalid_argument on a wrong header or malformed row.
std::vector<ReportRow> parse_report(std::string_view text);

/// Mean endpoint encounters (src + dst) per area_side, fitted against the
/// field area side^2. Failed rows are skipped.
analytics::CubeLawFit fit_cube_from_rows(std::span<const ReportRow> rows);

}  // namespace oppnet::cli
