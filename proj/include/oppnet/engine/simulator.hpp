#pragma once

// Fixed-step simulation loop. Each step, in order:
//   1. advance the clock by dt
//   2. move every mobile node, starting new legs as pauses end
//   3. expire TTLs in every buffer
//   4. detect contacts and log contact_up / contact_down
//   5. plan exchanges on every open contact, both directions
//   6. move bytes over every open contact
//   7. hand completed transfers to the receiver (or count the delivery)
//   8. generate traffic
// Steps 5-7 repeat within a step while any transfer completes, so a message
// can cross several links in one step when bandwidth allows.

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "oppnet/engine/event_log.hpp"
#include "oppnet/engine/metrics.hpp"
#include "oppnet/mobility.hpp"
#include "oppnet/rng.hpp"
#include "oppnet/routing/router.hpp"
#include "oppnet/scenario.hpp"

namespace oppnet::engine {

using NodePair = std::pair<NodeId, NodeId>;  // first < second

struct ContactEvent {
  NodeId node_a = 0;
  NodeId node_b = 0;
  double start = 0.0;
  std::optional<double> end;  // empty while the contact is open

  std::optional<double> duration() const {
    if (!end) return std::nullopt;
    return *end - start;
  }
};

struct TransferRecord {
  routing::MessageId message = 0;
  NodeId from = 0;
  NodeId to = 0;
  double started = 0.0;
  std::optional<double> completed;
  bool aborted = false;
  double bytes_moved = 0.0;
};

/// Pairs within range: distance <= min(R_i, R_j). Sorted, first < second.
std::vector<NodePair> detect_contacts(std::span<const Point> positions,
                                      std::span<const NodeSpec> specs);

struct PendingTransfer {
  routing::Message message;  // snapshot taken when the transfer was queued
  double started = 0.0;
  double bytes_moved = 0.0;
};

/// One direction of one contact. Transfers run serially, head first.
struct LinkQueue {
  NodeId from = 0;
  NodeId to = 0;
  std::deque<PendingTransfer> pending;
};

/// Moves up to `budget` bytes through the queue head first, completing as
/// many transfers as the budget covers. Spent bytes are taken off `budget`.
std::vector<TransferRecord> transfer_step(LinkQueue& queue, double& budget, double now);

/// Convenience form with a budget of bit_rate * dt.
std::vector<TransferRecord> transfer_step(LinkQueue& queue, double bit_rate, double dt, double now);

/// Drops every queued transfer; partial bytes are discarded.
std::vector<TransferRecord> abort_transfers(LinkQueue& queue, double now);

/// Messages due in the window (now - dt, now]: both endpoints create one
/// packet addressed to the other at t = interval, 2 * interval, ...
/// Ids are taken from `next_id` in order source, destination.
std::vector<routing::Message> generate_traffic(double now, double dt, const TrafficSpec& traffic,
                                               NodeId source, NodeId destination,
                                               routing::MessageId& next_id, int copies);

/// Contact interval for trace replay: the pair is connected at every step
/// time t with start <= t <= end.
struct ContactInterval {
  NodeId a = 0;
  NodeId b = 0;
  double start = 0.0;
  double end = 0.0;
};

/// Message created at the first step time >= `time`.
struct MessageInjection {
  double time = 0.0;
  NodeId src = 0;
  NodeId dst = 0;
};

class Simulator {
 public:
  /// Geometric mode: positions come from the mobility model and traffic from
  /// the ping-pong schedule. Throws ScenarioError for invalid configs.
  explicit Simulator(const ScenarioConfig& config);

  /// Trace replay: nodes never move, contacts come from `trace` and the only
  /// messages are `injections`.
  Simulator(const ScenarioConfig& config, std::vector<ContactInterval> trace,
            std::vector<MessageInjection> injections);

  ~Simulator();
  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  void step();
  void run_to_end();
  bool finished() const { return step_index_ >= total_steps_; }

  double now() const { return now_; }
  const ScenarioConfig& config() const { return config_; }
  const EventLog& log() const { return log_; }
  const std::vector<ContactEvent>& contacts() const { return contacts_; }
  const routing::NodeRoutingState& routing_state(NodeId id) const { return nodes_.at(id).routing; }
  const mobility::MobilityState& mobility_state(NodeId id) const { return nodes_.at(id).motion; }
  Point position(NodeId id) const { return nodes_.at(id).position; }
  std::size_t open_contact_count() const { return links_.size(); }

  /// Replaces a mobile node's current leg, e.g. to script a crossing.
  void set_mobility_state(NodeId id, const mobility::MobilityState& state);

 private:
  struct Node {
    Node(const NodeSpec& spec, std::uint64_t seed, double alpha)
        : spec(spec), rng(seed, node_stream(spec.id)), routing(spec.id, spec.buffer_capacity, alpha) {}

    NodeSpec spec;
    RandomStream rng;
    mobility::MobilityState motion;
    Point position;
    routing::NodeRoutingState routing;
    routing::IdSet incoming;  // ids currently in flight towards this node
  };

  struct Link {
    std::size_t contact_index = 0;
    LinkQueue forward;   // first -> second
    LinkQueue backward;  // second -> first
  };

  void move_nodes();
  void expire_messages();
  void update_contacts();
  void exchange();
  bool service(LinkQueue& queue, double& budget);
  bool top_up(LinkQueue& queue);
  void complete(const TransferRecord& record);
  void abort_queue(LinkQueue& queue, std::string_view reason);
  void inject_traffic(double window_start);
  void create_message(NodeId src, NodeId dst);
  void buffer_message(Node& node, routing::Message msg);
  std::vector<NodePair> current_pairs() const;

  ScenarioConfig config_;
  std::unique_ptr<routing::Router> router_;
  std::vector<Node> nodes_;
  NodeId source_ = 0;
  NodeId destination_ = 0;
  double dt_;
  std::uint64_t step_index_ = 0;
  std::uint64_t total_steps_ = 0;
  double now_ = 0.0;
  RandomStream traffic_rng_;
  routing::MessageId next_message_id_ = 0;
  routing::IdSet delivered_;
  std::map<NodePair, Link> links_;
  std::vector<ContactEvent> contacts_;
  EventLog log_;
  std::optional<std::vector<ContactInterval>> trace_;
  std::vector<MessageInjection> injections_;
  std::size_t next_injection_ = 0;
};

struct RunResult {
  MetricsReport metrics;
  EncounterCounts encounters;
  EventLog log;
  std::vector<ContactEvent> contacts;
};

/// Runs `config` to sim_time and computes its metrics.
RunResult run(const ScenarioConfig& config);

/// Mean duration of closed contacts between a static endpoint and a mobile
/// node. Empty when there are none.
std::optional<double> mean_endpoint_contact_duration(const ScenarioConfig& config,
                                                     std::span<const ContactEvent> contacts);

}  // namespace oppnet::engine
