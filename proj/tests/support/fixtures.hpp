#pragma once

// Scenario builders and small generators shared by the test binaries.

#include <string>
#include <vector>

#include "oppnet/config_io.hpp"
#include "oppnet/mobility.hpp"
#include "oppnet/rng.hpp"
#include "oppnet/scenario.hpp"

namespace fixtures {

using namespace oppnet;

inline NodeSpec static_node(NodeId id, NodeRole role, Point at) {
  NodeSpec n;
  n.id = id;
  n.role = role;
  n.position = at;
  n.rf_range = 80.0;
  n.bit_rate = 250000.0;
  n.buffer_capacity = 512 * 1024;
  return n;
}

inline NodeSpec helper(NodeId id) {
  NodeSpec n;
  n.id = id;
  n.role = NodeRole::helper;
  n.rf_range = 80.0;
  n.bit_rate = 250000.0;
  n.velocity = 10.0;
  n.pause_min = 5.0;
  n.pause_max = 10.0;
  n.buffer_capacity = 512 * 1024;
  return n;
}

inline NodeSpec satellite(NodeId id, Rect region, double degree = 0.8) {
  NodeSpec n = helper(id);
  n.role = NodeRole::satellite;
  n.bias = BiasSpec{region, degree, mobility::bias_sigma_from_quantile(0.8, 0.725)};
  return n;
}

/// Reference field, endpoints and traffic with `helpers` plain helpers and,
/// when `biased`, four satellites per endpoint placed before them.
inline ScenarioConfig reference(bool biased, std::size_t helpers = 20) {
  ScenarioConfig c;
  c.field.side = 5000.0;
  c.nodes.push_back(static_node(0, NodeRole::static_source, {500.0, 4500.0}));
  c.nodes.push_back(static_node(1, NodeRole::static_destination, {4500.0, 500.0}));
  if (biased) {
    for (int i = 0; i < 4; ++i) c.nodes.push_back(satellite(c.nodes.size(), {0, 4000, 1000, 5000}));
    for (int i = 0; i < 4; ++i) c.nodes.push_back(satellite(c.nodes.size(), {4000, 0, 5000, 1000}));
  } else {
    helpers += 8;
  }
  for (std::size_t i = 0; i < helpers; ++i) c.nodes.push_back(helper(c.nodes.size()));
  c.traffic = {1024, 500.0, 12000.0};
  c.sim_time = 30000.0;
  c.time_step = 0.1;
  c.seed = 1;
  return c;
}

/// Small field with two endpoints and a few helpers; runs in milliseconds.
inline ScenarioConfig small(std::uint64_t seed, std::size_t helpers = 4,
                            RouterKind router = RouterKind::epidemic) {
  ScenarioConfig c;
  c.field.side = 600.0;
  c.nodes.push_back(static_node(0, NodeRole::static_source, {100.0, 500.0}));
  c.nodes.push_back(static_node(1, NodeRole::static_destination, {500.0, 100.0}));
  for (std::size_t i = 0; i < helpers; ++i) c.nodes.push_back(helper(c.nodes.size()));
  c.traffic = {1024, 20.0, 400.0};
  c.router.kind = router;
  c.sim_time = 600.0;
  c.seed = seed;
  return c;
}

inline std::string source_dir() { return OPPNET_SOURCE_DIR; }

}  // namespace fixtures
