#include "oppnet/engine/metrics.hpp"

#include <unordered_map>
#include <unordered_set>

namespace oppnet::engine {

MetricsReport compute_metrics(const EventLog& log) {
  MetricsReport report;
  std::unordered_map<routing::MessageId, double> created_at;
  std::unordered_set<routing::MessageId> delivered;
  double latency_sum = 0.0;

  for (const auto& e : log.events()) {
    switch (e.kind) {
      case EventKind::created:
        ++report.created;
        created_at.emplace(*e.message, e.time);
        break;
      case EventKind::relayed: ++report.relayed; break;
      case EventKind::delivered:
        if (delivered.insert(*e.message).second) latency_sum += e.time - created_at.at(*e.message);
        break;
      case EventKind::dropped_ttl: ++report.dropped_ttl; break;
      case EventKind::dropped_buffer: ++report.dropped_buffer; break;
      default: break;
    }
  }

  report.delivered = delivered.size();
  if (report.created > 0) {
    report.delivery_probability =
        static_cast<double>(report.delivered) / static_cast<double>(report.created);
  }
  if (report.delivered > 0) {
    const double d = static_cast<double>(report.delivered);
    report.overhead_ratio = (static_cast<double>(report.relayed) - d) / d;
    report.average_latency = latency_sum / d;
  }
  return report;
}

EncounterCounts count_encounters(const EventLog& log, NodeId source, NodeId destination) {
  EncounterCounts counts;
  for (const auto& e : log.events()) {
    if (e.kind != EventKind::contact_up || !e.node_b) continue;
    const NodeId a = e.node_a;
    const NodeId b = *e.node_b;
    const bool endpoints_only = (a == source && b == destination) || (a == destination && b == source);
    if (endpoints_only) continue;
    if (a == source || b == source) ++counts.source;
    if (a == destination || b == destination) ++counts.destination;
  }
  return counts;
}

}  // namespace oppnet::engine
