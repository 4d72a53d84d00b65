#pragma once

// Random Waypoint movement, the affinity-biased waypoint rule for satellite
// nodes, and the closed-form RWP spatial density.

#include "oppnet/rng.hpp"
#include "oppnet/scenario.hpp"

namespace oppnet::mobility {

/// One leg of piecewise-linear motion followed by a pause at `target`.
/// Invariant: leg_start <= leg_arrival <= pause_until and
/// |target - origin| == velocity * (leg_arrival - leg_start).
struct MobilityState {
  Point origin;
  Point target;
  double leg_start = 0.0;
  double leg_arrival = 0.0;
  double pause_until = 0.0;
  double velocity = 0.0;

  friend bool operator==(const MobilityState&, const MobilityState&) = default;
};

/// Fraction of the untruncated selector mass that falls below the degree of
/// bias in the reference calibration (d = 0.8).
inline constexpr double kReferenceQuantile = 0.725;

/// Steady-state RWP node density (per m^2) at `p`. Evaluated on the field
/// shifted to [-a/2, a/2]^2. Throws std::out_of_range outside the field.
double rwp_pdf(Point p, const FieldSpec& field);

Point next_waypoint_rwp(RandomStream& rng, const FieldSpec& field);

double standard_normal_cdf(double z);

/// Sigma such that a Normal(0.5, sigma) selector satisfies
/// P(r <= degree) == target_prob. Bisection on the normal CDF to 1e-9.
/// Throws std::domain_error unless 0.5 < degree < 1 and 0.5 < target_prob < 1.
double bias_sigma_from_quantile(double degree, double target_prob);

/// P(r <= degree) for the selector truncated to [0, 1]. This is the long-run
/// fraction of satellite waypoints that land in the bias region.
double truncated_region_probability(double degree, double sigma);

/// Selector r ~ Normal(0.5, sigma) conditioned on [0, 1] by redrawing.
double draw_selector(RandomStream& rng, double sigma);

/// Waypoint inside `bias.region` when the selector is <= degree, otherwise
/// uniform over the field minus the region.
Point next_waypoint_biased(RandomStream& rng, const FieldSpec& field, const BiasSpec& bias);

/// Position on the leg at time `t`, or the target while pausing.
/// Throws std::out_of_range when t is outside [leg_start, pause_until].
Point position_at(const MobilityState& state, double t);

/// Starts the next leg at `now` from the previous target. Throws
/// std::invalid_argument for static nodes and std::out_of_range when called
/// before the pause ends.
MobilityState advance(const MobilityState& state, double now, const NodeSpec& spec,
                      const FieldSpec& field, RandomStream& rng);

/// A node resting at a waypoint drawn by its own rule, ready to move at t=0.
MobilityState initial_state(const NodeSpec& spec, const FieldSpec& field, RandomStream& rng);

}  // namespace oppnet::mobility
