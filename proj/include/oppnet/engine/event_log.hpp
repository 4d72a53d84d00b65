#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oppnet/routing/buffer.hpp"

namespace oppnet::engine {

enum class EventKind {
  created,
  relayed,
  delivered,
  dropped_ttl,
  dropped_buffer,
  contact_up,
  contact_down,
  transfer_aborted,
};

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

/// node_a/node_b: created (src, dst); relayed and delivered (from, to);
/// drops (holder, -); contact events (lower id, higher id);
/// transfer_aborted (from, to).
struct Event {
  double time = 0.0;
  EventKind kind = EventKind::created;
  std::optional<routing::MessageId> message;
  NodeId node_a = 0;
  std::optional<NodeId> node_b;
  std::string detail;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Append-only; times never decrease.
class EventLog {
 public:
  /// Throws std::logic_error if `event` is older than the last entry.
  void append(Event event);

  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }

 private:
  std::vector<Event> events_;
};

inline constexpr std::string_view kEventLogHeader = "time,event,msg_id,node_a,node_b,detail";

/// One line per event under kEventLogHeader; empty fields for absent values.
void write_event_log(std::ostream& out, const EventLog& log);
std::string event_log_text(const EventLog& log);

/// Inverse of write_event_log. Throws std::invalid_argument on bad input.
EventLog parse_event_log(std::string_view text);

}  // namespace oppnet::engine
