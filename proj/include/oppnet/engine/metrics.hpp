#pragma once

#include <cstdint>
#include <optional>

#include "oppnet/engine/event_log.hpp"

namespace oppnet::engine {

struct MetricsReport {
  double delivery_probability = 0.0;
  std::optional<double> overhead_ratio;   // undefined with no delivery
  std::optional<double> average_latency;  // seconds; undefined with no delivery
  std::uint64_t created = 0;
  std::uint64_t delivered = 0;  // distinct message ids
  std::uint64_t relayed = 0;    // every completed transfer, final hops included
  std::uint64_t dropped_ttl = 0;
  std::uint64_t dropped_buffer = 0;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// delivery_probability = delivered / created
/// overhead_ratio       = (relayed - delivered) / delivered
/// average_latency      = mean of (first delivery - creation)
MetricsReport compute_metrics(const EventLog& log);

struct EncounterCounts {
  std::uint64_t source = 0;
  std::uint64_t destination = 0;

  std::uint64_t total() const { return source + destination; }
};

/// contact_up events between a static endpoint and any node other than the
/// opposite endpoint.
EncounterCounts count_encounters(const EventLog& log, NodeId source, NodeId destination);

}  // namespace oppnet::engine
