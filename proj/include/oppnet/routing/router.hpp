#pragma once

// The contract the engine drives: per-node routing state plus one Router
// implementation per protocol.

#include <memory>
#include <string_view>
#include <vector>

#include "oppnet/routing/protocols.hpp"

namespace oppnet::routing {

struct NodeRoutingState {
  NodeRoutingState(NodeId id, std::uint64_t buffer_capacity, double prophet_alpha)
      : id(id), buffer(buffer_capacity), predictability(id, prophet_alpha) {}

  NodeId id;
  Buffer buffer;
  PredictabilityTable predictability;  // used by PRoPHET only
  IdSet received;                      // ids delivered to this node as destination

  /// What this node reports holding during an exchange.
  bool knows(MessageId id) const { return received.contains(id) || buffer.contains(id); }
};

/// Outcome of a completed transfer, decided when the last byte arrives.
struct Handoff {
  bool accepted = false;    // false: the receiver keeps nothing
  int receiver_copies = 1;  // copies field of the new replica
  int sender_copies = 1;    // copies the sender keeps
  bool sender_drops = false;
};

class Router {
 public:
  virtual ~Router() = default;

  virtual RouterKind kind() const = 0;

  /// Copies stamped on a freshly created message.
  virtual int initial_copies() const { return 1; }

  /// Called once per contact_up, for the pair in id order.
  virtual void on_contact_up(NodeRoutingState& /*a*/, NodeRoutingState& /*b*/, double /*now*/) {}

  /// Messages `self` wants to send to `peer`, best first. `peer_ids` holds
  /// every id the peer already has or is receiving.
  virtual std::vector<Message> plan(const NodeRoutingState& self, const NodeRoutingState& peer,
                                    const IdSet& peer_ids, double now) const = 0;

  /// Final hops are always accepted and the carrier drops its replica.
  virtual Handoff handoff(const Message& carried, bool peer_is_destination) const;
};

std::unique_ptr<Router> make_router(const RouterParams& params);

}  // namespace oppnet::routing
