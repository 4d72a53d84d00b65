#include "oppnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace oppnet {

double distance_squared(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

double distance(Point a, Point b) { return std::sqrt(distance_squared(a, b)); }

std::string_view to_string(NodeRole role) {
  switch (role) {
    case NodeRole::static_source: return "static-source";
    case NodeRole::static_destination: return "static-destination";
    case NodeRole::helper: return "helper";
    case NodeRole::satellite: return "satellite";
  }
  return "unknown";
}

std::optional<NodeRole> parse_role(std::string_view text) {
  for (auto role : {NodeRole::static_source, NodeRole::static_destination, NodeRole::helper,
                    NodeRole::satellite}) {
    if (to_string(role) == text) return role;
  }
  return std::nullopt;
}

std::string_view to_string(RouterKind kind) {
  switch (kind) {
    case RouterKind::epidemic: return "epidemic";
    case RouterKind::spray_and_wait: return "snw";
    case RouterKind::prophet: return "prophet";
  }
  return "unknown";
}

std::optional<RouterKind> parse_router_kind(std::string_view text) {
  if (text == "epidemic") return RouterKind::epidemic;
  if (text == "snw" || text == "spray-and-wait") return RouterKind::spray_and_wait;
  if (text == "prophet") return RouterKind::prophet;
  return std::nullopt;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::invalid_geometry: return "invalid-geometry";
    case ViolationKind::invalid_roles: return "invalid-roles";
    case ViolationKind::invalid_parameter: return "invalid-parameter";
  }
  return "unknown";
}

namespace {

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << "invalid scenario:";
  for (const auto& v : violations) {
    out << "\n  " << to_string(v.kind) << " [" << v.field << "] " << v.message;
  }
  return out.str();
}

NodeId find_role(const ScenarioConfig& config, NodeRole role) {
  auto it = std::find_if(config.nodes.begin(), config.nodes.end(),
                         [role](const NodeSpec& n) { return n.role == role; });
  if (it == config.nodes.end()) {
    throw std::logic_error("scenario has no node with role " + std::string(to_string(role)));
  }
  return static_cast<NodeId>(it - config.nodes.begin());
}

class Checker {
 public:
  void require(bool ok, ViolationKind kind, std::string field, std::string message) {
    if (!ok) out_.push_back({kind, std::move(field), std::move(message)});
  }
  void positive(double value, std::string field) {
    require(value > 0.0 && std::isfinite(value), ViolationKind::invalid_parameter, std::move(field),
            "must be a positive finite number");
  }
  std::vector<Violation> take() { return std::move(out_); }

 private:
  std::vector<Violation> out_;
};

void check_bias(Checker& c, const BiasSpec& bias, const FieldSpec& field, const std::string& prefix) {
  const Rect& r = bias.region;
  const bool ordered = r.x_min < r.x_max && r.y_min < r.y_max;
  c.require(ordered, ViolationKind::invalid_geometry, prefix + ".bias_region",
            "requires x_min < x_max and y_min < y_max");
  c.require(r.inside(field), ViolationKind::invalid_geometry, prefix + ".bias_region",
            "must lie inside the field");
  const bool covers_field =
      r.x_min <= 0.0 && r.y_min <= 0.0 && r.x_max >= field.side && r.y_max >= field.side;
  c.require(!(covers_field && bias.degree < 1.0), ViolationKind::invalid_geometry,
            prefix + ".bias_region", "covers the whole field, leaving no complement to sample");
  c.require(bias.degree >= 0.0 && bias.degree <= 1.0, ViolationKind::invalid_parameter,
            prefix + ".bias_degree", "must lie in [0, 1]");
  c.positive(bias.sigma, prefix + ".bias_sigma");
}

void check_node(Checker& c, const NodeSpec& node, std::size_t index, const FieldSpec& field) {
  const std::string prefix = "nodes[" + std::to_string(index) + "]";
  c.require(node.id == index, ViolationKind::invalid_parameter, prefix + ".id",
            "ids must equal the node's position in the file (0-based)");
  c.positive(node.rf_range, prefix + ".rf_range");
  c.positive(node.bit_rate, prefix + ".bit_rate");
  c.require(node.buffer_capacity > 0, ViolationKind::invalid_parameter, prefix + ".buffer_capacity",
            "must be positive");

  if (node.is_static()) {
    c.require(node.position.has_value(), ViolationKind::invalid_geometry, prefix + ".position",
              "static nodes need a position");
    if (node.position) {
      c.require(field.contains(*node.position), ViolationKind::invalid_geometry,
                prefix + ".position", "must lie inside the field");
    }
    c.require(node.velocity == 0.0, ViolationKind::invalid_parameter, prefix + ".velocity",
              "static nodes do not move");
    c.require(node.pause_min == 0.0 && node.pause_max == 0.0, ViolationKind::invalid_parameter,
              prefix + ".pause", "static nodes have no pause");
    c.require(!node.bias.has_value(), ViolationKind::invalid_roles, prefix + ".bias",
              "static nodes cannot be biased");
    return;
  }

  c.require(!node.position.has_value(), ViolationKind::invalid_parameter, prefix + ".position",
            "mobile nodes draw their own positions");
  c.positive(node.velocity, prefix + ".velocity");
  c.require(node.pause_min >= 0.0, ViolationKind::invalid_parameter, prefix + ".pause_min",
            "must be non-negative");
  c.require(node.pause_min <= node.pause_max, ViolationKind::invalid_parameter,
            prefix + ".pause_max", "must be >= pause_min");
  if (node.role == NodeRole::helper) {
    c.require(!node.bias.has_value(), ViolationKind::invalid_roles, prefix + ".bias",
              "helper nodes are unbiased; use role = satellite");
  } else {
    c.require(node.bias.has_value(), ViolationKind::invalid_roles, prefix + ".bias",
              "satellite nodes need a bias region");
    if (node.bias) check_bias(c, *node.bias, field, prefix);
  }
}

}  // namespace

ScenarioError::ScenarioError(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

bool ScenarioError::has(ViolationKind kind) const {
  return std::any_of(violations_.begin(), violations_.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

NodeId ScenarioConfig::source() const { return find_role(*this, NodeRole::static_source); }
NodeId ScenarioConfig::destination() const {
  return find_role(*this, NodeRole::static_destination);
}
std::size_t ScenarioConfig::satellite_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [](const NodeSpec& n) { return n.role == NodeRole::satellite; }));
}

std::vector<Violation> check_scenario(const ScenarioConfig& config) {
  Checker c;
  c.positive(config.field.side, "field.side");

  const auto count = [&](NodeRole role) {
    return std::count_if(config.nodes.begin(), config.nodes.end(),
                         [role](const NodeSpec& n) { return n.role == role; });
  };
  c.require(count(NodeRole::static_source) == 1, ViolationKind::invalid_roles, "nodes.role",
            "exactly one static-source node is required");
  c.require(count(NodeRole::static_destination) == 1, ViolationKind::invalid_roles, "nodes.role",
            "exactly one static-destination node is required");
  for (std::size_t i = 0; i < config.nodes.size(); ++i) {
    check_node(c, config.nodes[i], i, config.field);
  }

  c.require(config.traffic.packet_size > 0, ViolationKind::invalid_parameter,
            "traffic.packet_size", "must be positive");
  c.positive(config.traffic.generation_interval, "traffic.generation_interval");
  c.positive(config.traffic.ttl, "traffic.ttl");

  const RouterParams& r = config.router;
  c.require(r.snw_initial_copies >= 1, ViolationKind::invalid_parameter, "router.snw_copies",
            "must be >= 1");
  const auto unit_open = [&](double v, const char* name) {
    c.require(v > 0.0 && v < 1.0, ViolationKind::invalid_parameter, name, "must lie in (0, 1)");
  };
  unit_open(r.prophet_p0, "router.prophet_p0");
  unit_open(r.prophet_beta, "router.prophet_beta");
  unit_open(r.prophet_alpha, "router.prophet_alpha");

  c.positive(config.sim_time, "sim.sim_time");
  c.require(config.time_step > 0.0 && config.time_step <= 1.0, ViolationKind::invalid_parameter,
            "sim.time_step", "must lie in (0, 1]");
  return c.take();
}

ScenarioConfig validate_scenario(ScenarioConfig raw) {
  auto violations = check_scenario(raw);
  if (!violations.empty()) throw ScenarioError(std::move(violations));
  return raw;
}

}  // namespace oppnet
