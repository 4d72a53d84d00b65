#include "oppnet/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oppnet::mobility {

double rwp_pdf(Point p, const FieldSpec& field) {
  if (!field.contains(p)) throw std::out_of_range("rwp_pdf: point outside the field");
  const double a = field.side;
  const double quarter = a * a / 4.0;
  const double xs = p.x - a / 2.0;
  const double ys = p.y - a / 2.0;
  const double a3 = a * a * a;
  return 36.0 / (a3 * a3) * (xs * xs - quarter) * (ys * ys - quarter);
}

Point next_waypoint_rwp(RandomStream& rng, const FieldSpec& field) {
  const double x = rng.uniform(0.0, field.side);
  const double y = rng.uniform(0.0, field.side);
  return {x, y};
}

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double bias_sigma_from_quantile(double degree, double target_prob) {
  if (!(degree > 0.5 && degree < 1.0) || !(target_prob > 0.5 && target_prob < 1.0)) {
    throw std::domain_error("bias_sigma_from_quantile: no sigma for degree " +
                            std::to_string(degree) + ", probability " +
                            std::to_string(target_prob));
  }
  // P(r <= degree) = Phi((degree - 0.5) / sigma) falls monotonically from 1
  // towards 0.5 as sigma grows.
  const double offset = degree - 0.5;
  const auto excess = [&](double sigma) {
    return standard_normal_cdf(offset / sigma) - target_prob;
  };
  double lo = 1e-6;
  double hi = 1.0;
  while (excess(hi) > 0.0) hi *= 2.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double truncated_region_probability(double degree, double sigma) {
  const double lower = standard_normal_cdf(-0.5 / sigma);
  const double upper = standard_normal_cdf(0.5 / sigma);
  const double clamped = std::clamp(degree, 0.0, 1.0);
  return (standard_normal_cdf((clamped - 0.5) / sigma) - lower) / (upper - lower);
}

double draw_selector(RandomStream& rng, double sigma) {
  while (true) {
    const double r = rng.normal(0.5, sigma);
    if (r >= 0.0 && r <= 1.0) return r;
  }
}

Point next_waypoint_biased(RandomStream& rng, const FieldSpec& field, const BiasSpec& bias) {
  const double r = draw_selector(rng, bias.sigma);
  const Rect& region = bias.region;
  if (r <= bias.degree) {
    return {rng.uniform(region.x_min, region.x_max), rng.uniform(region.y_min, region.y_max)};
  }
  while (true) {
    const Point p = next_waypoint_rwp(rng, field);
    if (!region.contains(p)) return p;
  }
}

Point position_at(const MobilityState& state, double t) {
  if (t < state.leg_start || t > state.pause_until) {
    throw std::out_of_range("position_at: time outside the current leg");
  }
  if (t >= state.leg_arrival) return state.target;
  const double span = state.leg_arrival - state.leg_start;
  const double f = (t - state.leg_start) / span;
  return {state.origin.x + (state.target.x - state.origin.x) * f,
          state.origin.y + (state.target.y - state.origin.y) * f};
}

MobilityState advance(const MobilityState& state, double now, const NodeSpec& spec,
                      const FieldSpec& field, RandomStream& rng) {
  if (spec.is_static()) throw std::invalid_argument("advance: static nodes do not move");
  if (now < state.pause_until) throw std::out_of_range("advance: node is still pausing");

  MobilityState next;
  next.origin = state.target;
  next.target = spec.bias ? next_waypoint_biased(rng, field, *spec.bias)
                          : next_waypoint_rwp(rng, field);
  next.velocity = spec.velocity;
  next.leg_start = now;
  next.leg_arrival = now + distance(next.origin, next.target) / spec.velocity;
  next.pause_until = next.leg_arrival + rng.uniform(spec.pause_min, spec.pause_max);
  return next;
}

MobilityState initial_state(const NodeSpec& spec, const FieldSpec& field, RandomStream& rng) {
  MobilityState state;
  if (spec.is_static()) {
    state.origin = state.target = spec.position.value_or(Point{});
    return state;
  }
  const Point start = spec.bias ? next_waypoint_biased(rng, field, *spec.bias)
                                : next_waypoint_rwp(rng, field);
  state.origin = state.target = start;
  state.velocity = spec.velocity;
  return state;
}

}  // namespace oppnet::mobility
