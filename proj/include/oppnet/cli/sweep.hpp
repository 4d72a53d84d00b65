#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oppnet/cli/report.hpp"
#include "oppnet/scenario.hpp"

namespace oppnet::cli {

enum class AxisKind { area_side, mobility, router };

std::string_view to_string(AxisKind kind);

struct Axis {
  AxisKind kind = AxisKind::router;
  std::vector<std::string> values;
};

/// `area_side=1000,1500`, `mobility=biased,unbiased` or
/// `router=epidemic,snw,prophet`. Throws std::invalid_argument.
Axis parse_axis(std::string_view text);

struct SweepSpec {
  std::string scenario;  // label written to the report
  ScenarioConfig base;
  std::vector<Axis> axes;  // points are the cartesian product, first axis outermost
  int replications = 1;

  /// Replication r runs with base.seed + r.
  std::vector<std::uint64_t> seeds() const;
};

/// Throws std::invalid_argument for empty or repeated axis values, repeated
/// axes or replications < 1.
void validate_sweep(const SweepSpec& spec);

/// Field resized to `side`. Static nodes and bias regions keep their offset
/// from the walls they sit nearest to, so corner placements stay in the
/// corners.
ScenarioConfig resize_field(const ScenarioConfig& config, double side);

/// Satellites become plain helpers.
ScenarioConfig strip_bias(const ScenarioConfig& config);

ScenarioConfig apply_setting(const ScenarioConfig& config, AxisKind kind, std::string_view value);

/// One row per (axis point, replication) in axis order then replication
/// order, whatever the worker count. A point that fails validation yields a
/// row without metrics.
std::vector<ReportRow> run_sweep(const SweepSpec& spec, unsigned workers);

}  // namespace oppnet::cli
