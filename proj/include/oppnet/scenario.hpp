#pragma once

// Domain types shared by every part of the simulator.
//
// Coordinates live on [0, side]^2 with the origin at the lower-left corner.
// Lengths are meters, times seconds, sizes bytes, rates bytes per second.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oppnet {

using NodeId = std::size_t;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);
double distance_squared(Point a, Point b);

struct FieldSpec {
  double side = 0.0;

  double area() const { return side * side; }
  bool contains(Point p) const {
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= side && p.y <= side;
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct Rect {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  bool contains(Point p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  bool inside(const FieldSpec& field) const {
    return x_min >= 0.0 && y_min >= 0.0 && x_max <= field.side && y_max <= field.side;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Affinity of a satellite node for one rectangle of the field.
///
/// `degree` is the selector threshold d in [0, 1]; `sigma` is the standard
/// deviation of the Normal(0.5, sigma) selector. d >= 0.5 reads as positive
/// bias, d < 0.5 as negative bias.
struct BiasSpec {
  Rect region;
  double degree = 0.0;
  double sigma = 0.0;

  bool positive() const { return degree >= 0.5; }

  friend bool operator==(const BiasSpec&, const BiasSpec&) = default;
};

enum class NodeRole { static_source, static_destination, helper, satellite };

std::string_view to_string(NodeRole role);
std::optional<NodeRole> parse_role(std::string_view text);

struct NodeSpec {
  NodeId id = 0;
  NodeRole role = NodeRole::helper;
  std::optional<Point> position;  // static roles only
  double rf_range = 0.0;
  double bit_rate = 0.0;
  double velocity = 0.0;  // mobile roles only
  double pause_min = 0.0;
  double pause_max = 0.0;
  std::uint64_t buffer_capacity = 0;
  std::optional<BiasSpec> bias;  // satellite role only

  bool is_static() const {
    return role == NodeRole::static_source || role == NodeRole::static_destination;
  }
  bool is_mobile() const { return !is_static(); }

  friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

struct TrafficSpec {
  std::uint64_t packet_size = 0;
  double generation_interval = 0.0;  // one packet per interval per endpoint
  double ttl = 0.0;

  /// Offered load of one endpoint in bytes per second.
  double lambda() const { return static_cast<double>(packet_size) / generation_interval; }

  friend bool operator==(const TrafficSpec&, const TrafficSpec&) = default;
};

enum class RouterKind { epidemic, spray_and_wait, prophet };

std::string_view to_string(RouterKind kind);
std::optional<RouterKind> parse_router_kind(std::string_view text);

struct RouterParams {
  RouterKind kind = RouterKind::epidemic;
  int snw_initial_copies = 6;
  double prophet_p0 = 0.75;
  double prophet_beta = 0.25;
  double prophet_alpha = 0.98;

  friend bool operator==(const RouterParams&, const RouterParams&) = default;
};

struct ScenarioConfig {
  FieldSpec field;
  std::vector<NodeSpec> nodes;
  TrafficSpec traffic;
  RouterParams router;
  double sim_time = 0.0;
  double time_step = 0.1;
  std::uint64_t seed = 0;

  NodeId source() const;
  NodeId destination() const;
  std::size_t satellite_count() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

enum class ViolationKind { invalid_geometry, invalid_roles, invalid_parameter };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string field;
  std::string message;
};

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const { return violations_; }
  bool has(ViolationKind kind) const;

 private:
  std::vector<Violation> violations_;
};

/// Every invariant the config breaks, in field order. Empty means valid.
std::vector<Violation> check_scenario(const ScenarioConfig& config);

/// Returns `raw` unchanged when valid, throws ScenarioError otherwise.
ScenarioConfig validate_scenario(ScenarioConfig raw);

}  // namespace oppnet
