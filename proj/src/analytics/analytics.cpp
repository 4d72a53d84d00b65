#include "oppnet/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "oppnet/mobility.hpp"

namespace oppnet::analytics {

namespace {

// Antiderivative of (u^2 - a^2/4) in the centred coordinate u.
double axis_antiderivative(double u, double a) { return u * u * u / 3.0 - a * a * u / 4.0; }

double axis_mass(double lo, double hi, double a) {
  const double half = a / 2.0;
  return axis_antiderivative(hi - half, a) - axis_antiderivative(lo - half, a);
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace

EncounterRegion make_encounter_region(Point center, double rf_range, const FieldSpec& field) {
  require_positive(rf_range, "rf_range");
  EncounterRegion region;
  region.center = center;
  region.half_width = rf_range;
  region.clipped = {std::max(0.0, center.x - rf_range), std::max(0.0, center.y - rf_range),
                    std::min(field.side, center.x + rf_range),
                    std::min(field.side, center.y + rf_range)};
  if (region.clipped.x_min >= region.clipped.x_max || region.clipped.y_min >= region.clipped.y_max) {
    throw std::invalid_argument("encounter region does not intersect the field");
  }
  return region;
}

double encounter_probability(const EncounterRegion& region, const FieldSpec& field) {
  const double a = field.side;
  const Rect& r = region.clipped;
  const double a3 = a * a * a;
  const double p = 36.0 / (a3 * a3) * axis_mass(r.x_min, r.x_max, a) * axis_mass(r.y_min, r.y_max, a);
  return std::clamp(p, 0.0, 1.0);
}

double expected_transition_length(const FieldSpec& field) {
  return kTransitionLengthCoefficient * field.side;
}

double expected_epoch_time(const FieldSpec& field, double velocity) {
  require_positive(velocity, "velocity");
  return expected_transition_length(field) / velocity;
}

double expected_contact_duration(double rf_range, double velocity) {
  require_positive(rf_range, "rf_range");
  require_positive(velocity, "velocity");
  return 2.0 * rf_range / velocity;
}

double max_intercontact_time(double rf_range, double bit_rate, double lambda, double velocity) {
  require_positive(rf_range, "rf_range");
  require_positive(bit_rate, "bit_rate");
  require_positive(lambda, "lambda");
  require_positive(velocity, "velocity");
  return 2.0 * rf_range * bit_rate / (lambda * velocity);
}

double buffer_intercontact_bound(double buffer_bytes, double lambda) {
  require_positive(buffer_bytes, "buffer size");
  require_positive(lambda, "lambda");
  return buffer_bytes / lambda;
}

CubeLawFit fit_cube_law(std::span<const AreaCount> samples) {
  if (samples.size() < 3) throw std::invalid_argument("fit_cube_law needs at least 3 samples");
  std::set<double> areas;
  for (const auto& s : samples) {
    if (!(s.area > 0.0) || !(s.count > 0.0)) {
      throw std::invalid_argument("fit_cube_law needs positive areas and counts");
    }
    areas.insert(s.area);
  }
  if (areas.size() != samples.size()) throw std::invalid_argument("fit_cube_law: repeated area");

  const double n = static_cast<double>(samples.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& s : samples) {
    mean_x += std::log(s.area);
    mean_y += std::log(s.count);
  }
  mean_x /= n;
  mean_y /= n;

  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& s : samples) {
    const double dx = std::log(s.area) - mean_x;
    sxx += dx * dx;
    sxy += dx * (std::log(s.count) - mean_y);
  }

  CubeLawFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = mean_y - fit.exponent * mean_x;
  fit.c = std::exp(intercept);
  double ss = 0.0;
  for (const auto& s : samples) {
    const double r = std::log(s.count) - (intercept + fit.exponent * std::log(s.area));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

EstimatorSummary summarize(const ScenarioConfig& config) {
  const FieldSpec& field = config.field;
  const NodeSpec& src = config.nodes.at(config.source());
  const NodeSpec& dst = config.nodes.at(config.destination());
  const auto mobile = std::find_if(config.nodes.begin(), config.nodes.end(),
                                   [](const NodeSpec& n) { return n.is_mobile(); });
  if (mobile == config.nodes.end()) {
    throw std::invalid_argument("summarize: scenario has no mobile nodes");
  }

  EstimatorSummary s;
  s.field_side = field.side;
  s.velocity = mobile->velocity;
  s.rf_range = src.rf_range;
  s.bit_rate = src.bit_rate;
  s.lambda = config.traffic.lambda();
  s.encounter_probability_source =
      encounter_probability(make_encounter_region(*src.position, src.rf_range, field), field);
  s.encounter_probability_destination =
      encounter_probability(make_encounter_region(*dst.position, dst.rf_range, field), field);
  s.transition_length = expected_transition_length(field);
  s.epoch_time = expected_epoch_time(field, s.velocity);
  s.contact_duration_bound = expected_contact_duration(s.rf_range, s.velocity);
  s.max_intercontact = max_intercontact_time(s.rf_range, s.bit_rate, s.lambda, s.velocity);
  s.buffer_intercontact =
      buffer_intercontact_bound(static_cast<double>(src.buffer_capacity), s.lambda);
  for (const auto& n : config.nodes) {
    if (n.bias) {
      s.satellite_region_probability.emplace_back(
          n.id, mobility::truncated_region_probability(n.bias->degree, n.bias->sigma));
    }
  }
  return s;
}

}  // namespace oppnet::analytics
