#pragma once

// Closed-form mobility estimators for a static node watched by RWP helpers,
// and the log-log fit used to check encounter counts against the cube law.

#include <span>
#include <utility>
#include <vector>

#include "oppnet/scenario.hpp"

namespace oppnet::analytics {

/// The 2R x 2R square around a static node, clipped to the field.
struct EncounterRegion {
  Point center;
  double half_width = 0.0;
  Rect clipped;
};

/// Throws std::invalid_argument when the square misses the field entirely.
EncounterRegion make_encounter_region(Point center, double rf_range, const FieldSpec& field);

/// Probability mass of the RWP density inside `region.clipped`, from the exact
/// antiderivative of the separable polynomial.
double encounter_probability(const EncounterRegion& region, const FieldSpec& field);

/// Mean distance between two uniform points of the field.
inline constexpr double kTransitionLengthCoefficient = 0.5214;

double expected_transition_length(const FieldSpec& field);

/// Expected travel time of one leg; pauses are not included.
double expected_epoch_time(const FieldSpec& field, double velocity);

/// 2R/v. This is the time to cross the range disk along a diameter, which
/// bounds the mean chord crossing from above.
double expected_contact_duration(double rf_range, double velocity);

/// Largest inter-contact time whose backlog (lambda * dT) still fits within
/// one contact's transfer budget 2Rb/v.
double max_intercontact_time(double rf_range, double bit_rate, double lambda, double velocity);

/// Largest inter-contact time whose backlog fits in a buffer of
/// `buffer_bytes`. Necessary, not sufficient.
double buffer_intercontact_bound(double buffer_bytes, double lambda);

struct CubeLawFit {
  double c = 0.0;         // count = c * area^exponent
  double exponent = 0.0;  // fitted log-log slope
  double residual = 0.0;  // RMS of the log residuals
};

struct AreaCount {
  double area = 0.0;
  double count = 0.0;
};

/// Least-squares line through (ln area, ln count). Needs at least three
/// samples with distinct areas and positive counts; throws
/// std::invalid_argument otherwise.
CubeLawFit fit_cube_law(std::span<const AreaCount> samples);

/// Every estimator evaluated for one scenario.
struct EstimatorSummary {
  double field_side = 0.0;
  double encounter_probability_source = 0.0;
  double encounter_probability_destination = 0.0;
  double transition_length = 0.0;
  double epoch_time = 0.0;
  double contact_duration_bound = 0.0;
  double max_intercontact = 0.0;
  double buffer_intercontact = 0.0;
  double velocity = 0.0;
  double rf_range = 0.0;
  double bit_rate = 0.0;
  double lambda = 0.0;
  /// (node id, long-run fraction of waypoints inside its bias region)
  std::vector<std::pair<NodeId, double>> satellite_region_probability;
};

/// Uses the first mobile node's velocity and the source's range, bit rate and
/// buffer; every node in the reference scenarios shares these values.
EstimatorSummary summarize(const ScenarioConfig& config);

}  // namespace oppnet::analytics
