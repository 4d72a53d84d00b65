#include "oppnet/engine/event_log.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "oppnet/format.hpp"

namespace oppnet::engine {

namespace {

constexpr EventKind kAllKinds[] = {
    EventKind::created,        EventKind::relayed,    EventKind::delivered,
    EventKind::dropped_ttl,    EventKind::dropped_buffer, EventKind::contact_up,
    EventKind::contact_down,   EventKind::transfer_aborted,
};

}  // namespace

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::created: return "created";
    case EventKind::relayed: return "relayed";
    case EventKind::delivered: return "delivered";
    case EventKind::dropped_ttl: return "dropped_ttl";
    case EventKind::dropped_buffer: return "dropped_buffer";
    case EventKind::contact_up: return "contact_up";
    case EventKind::contact_down: return "contact_down";
    case EventKind::transfer_aborted: return "transfer_aborted";
  }
  return "unknown";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
  for (auto kind : kAllKinds) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

void EventLog::append(Event event) {
  if (!events_.empty() && event.time < events_.back().time) {
    throw std::logic_error("event log times must be non-decreasing");
  }
  events_.push_back(std::move(event));
}

void write_event_log(std::ostream& out, const EventLog& log) {
  out << kEventLogHeader << '\n';
  for (const auto& e : log.events()) {
    out << format_number(e.time) << ',' << to_string(e.kind) << ',';
    if (e.message) out << *e.message;
    out << ',' << e.node_a << ',';
    if (e.node_b) out << *e.node_b;
    out << ',' << e.detail << '\n';
  }
}

std::string event_log_text(const EventLog& log) {
  std::ostringstream out;
  write_event_log(out, log);
  return out.str();
}

EventLog parse_event_log(std::string_view text) {
  EventLog log;
  bool header = true;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kEventLogHeader) throw std::invalid_argument("event log: unexpected header");
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 6) throw std::invalid_argument("event log: expected 6 fields");
    Event e;
    const auto time = parse_double(f[0]);
    const auto kind = parse_event_kind(f[1]);
    const auto node_a = parse_uint(f[3]);
    if (!time || !kind || !node_a) throw std::invalid_argument("event log: malformed line");
    e.time = *time;
    e.kind = *kind;
    e.node_a = static_cast<NodeId>(*node_a);
    if (!f[2].empty()) e.message = parse_uint(f[2]).value();
    if (!f[4].empty()) e.node_b = static_cast<NodeId>(parse_uint(f[4]).value());
    e.detail = std::string(f[5]);
    log.append(std::move(e));
  }
  return log;
}

}  // namespace oppnet::engine
