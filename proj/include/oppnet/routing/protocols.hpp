#pragma once

// Per-protocol decision rules: epidemic anti-entropy, binary spray-and-wait
// copy splitting, and PRoPHET delivery predictabilities.

#include <map>
#include <unordered_set>
#include <vector>

#include "oppnet/routing/buffer.hpp"

namespace oppnet::routing {

using IdSet = std::unordered_set<MessageId>;

// ---------------------------------------------------------------- epidemic

/// Every live buffered message the peer does not hold, oldest created first.
std::vector<Message> epidemic_plan(const Buffer& self, const IdSet& peer_ids, double now);

// ---------------------------------------------------------- spray-and-wait

enum class SnwActionKind { forward_half, forward_final, hold };

struct SnwAction {
  SnwActionKind kind = SnwActionKind::hold;
  int kept = 0;
  int given = 0;

  friend bool operator==(const SnwAction&, const SnwAction&) = default;
};

/// Binary mode: the destination always gets the message; otherwise a carrier
/// with more than one copy hands over floor(copies / 2) and keeps the rest,
/// and a carrier with one copy waits for the destination.
SnwAction snw_on_contact(const Message& msg, bool peer_is_destination);

/// Messages the peer lacks that snw_on_contact would not hold, oldest first.
std::vector<Message> snw_plan(const Buffer& self, NodeId peer, const IdSet& peer_ids, double now);

// ----------------------------------------------------------------- PRoPHET

/// p' = (1 - p) * p0 + p. Throws std::out_of_range outside [0, 1].
double prophet_update_direct(double p, double p0);

/// p' = alpha^k * p for k elapsed time units.
double prophet_age(double p, double alpha, double k);

/// p_iz' = p_iz + (1 - p_iz) * p_ij * p_jz * beta.
double prophet_transitive(double p_iz, double p_ij, double p_jz, double beta);

struct ProphetParams {
  double p0 = 0.75;
  double beta = 0.25;
  double alpha = 0.98;
};

/// Delivery predictabilities held by one node. Absent entries read as 0 and
/// the owner's own entry reads as 1. Aging is lazy: an entry loses a factor
/// alpha for every whole second since its last update, applied on read.
class PredictabilityTable {
 public:
  struct Entry {
    double p = 0.0;
    double last_update = 0.0;
  };

  PredictabilityTable() = default;
  PredictabilityTable(NodeId owner, double alpha) : owner_(owner), alpha_(alpha) {}

  NodeId owner() const { return owner_; }

  /// Predictability for `dst` aged to `now`.
  double at(NodeId dst, double now) const;

  /// Folds elapsed whole seconds into every entry; fractional remainders are
  /// kept so repeated aging matches a single read.
  void age(double now);

  void set(NodeId dst, double p, double now);

  const std::map<NodeId, Entry>& entries() const { return entries_; }

 private:
  NodeId owner_ = 0;
  double alpha_ = 0.98;
  std::map<NodeId, Entry> entries_;
};

/// Encounter between the owners of `a` and `b` at `now`: age both tables,
/// apply the direct update in both directions, then the transitive update
/// in both directions using each peer's table as it stood after the direct
/// step.
void prophet_encounter(PredictabilityTable& a, PredictabilityTable& b, double now,
                       const ProphetParams& params);

/// Messages the peer lacks whose destination the peer predicts strictly
/// better than we do, best peer predictability first. Both tables are read
/// aged to `now`.
std::vector<Message> prophet_plan(const PredictabilityTable& self, const PredictabilityTable& peer,
                                  const Buffer& self_buf, const IdSet& peer_ids, double now);

}  // namespace oppnet::routing
