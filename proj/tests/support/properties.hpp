#pragma once

// Randomized state machines for the routing invariants. Each returns the
// number of steps at which the invariant failed (0 means it held).

#include <cmath>
#include <map>
#include <vector>

#include "oppnet/rng.hpp"
#include "oppnet/routing/buffer.hpp"
#include "oppnet/routing/protocols.hpp"
#include "oppnet/routing/router.hpp"

namespace properties {

using namespace oppnet;
using namespace oppnet::routing;

struct SnwOutcome {
  std::uint64_t steps = 0;
  std::uint64_t violations = 0;
  std::uint64_t transfers = 0;
};

/// Random contacts among `nodes` carriers of spray-and-wait messages, with
/// random buffer drops and TTL expiry mixed in. Checks, after every step,
/// that the copies of each message sum to exactly N while no replica has
/// been lost or delivered, and never exceed N afterwards.
inline SnwOutcome snw_conservation(std::uint64_t seed, std::uint64_t steps, int nodes = 8,
                                   int initial = 6) {
  auto rng = rng_stream(seed, 0);
  const auto router = make_router({RouterKind::spray_and_wait, initial});
  std::vector<NodeRoutingState> state;
  for (int i = 0; i < nodes; ++i) state.emplace_back(i, 64 * 1024, 0.98);

  std::map<MessageId, bool> intact;  // id -> no drop or delivery yet
  MessageId next_id = 0;
  double now = 0.0;
  SnwOutcome out;

  for (std::uint64_t s = 0; s < steps; ++s) {
    now += 1.0;
    const double u = rng.uniform();
    if (u < 0.05 || intact.empty()) {
      const NodeId src = rng.next_u64() % nodes;
      NodeId dst = rng.next_u64() % nodes;
      if (dst == src) dst = (dst + 1) % nodes;
      Message m{next_id++, src, dst, 1024, now, 50.0 + rng.uniform(0, 400), initial, 0};
      intact[m.id] = true;
      for (const auto& d : state[src].buffer.insert(m, now)) intact[d.id] = false;
    } else if (u < 0.07) {
      const NodeId n = rng.next_u64() % nodes;
      const auto& entries = state[n].buffer.entries();
      if (!entries.empty()) {
        const auto id = entries[rng.next_u64() % entries.size()].id;
        state[n].buffer.remove(id);
        intact[id] = false;
      }
    } else {
      const NodeId a = rng.next_u64() % nodes;
      NodeId b = rng.next_u64() % nodes;
      if (a == b) b = (b + 1) % nodes;
      IdSet peer_ids;
      for (const auto& m : state[b].buffer.entries()) peer_ids.insert(m.id);
      for (const auto& m : state[a].buffer.entries()) {
        if (state[b].received.contains(m.id)) peer_ids.insert(m.id);
      }
      const auto plan = router->plan(state[a], state[b], peer_ids, now);
      if (!plan.empty()) {
        const Message* carried = state[a].buffer.find(plan.front().id);
        const bool final_hop = carried->dst == b;
        const Handoff h = router->handoff(*carried, final_hop);
        if (h.accepted) {
          ++out.transfers;
          Message replica = *carried;
          replica.copies = h.receiver_copies;
          ++replica.hops;
          if (h.sender_drops) {
            state[a].buffer.remove(replica.id);
          } else {
            state[a].buffer.find(replica.id)->copies = h.sender_copies;
          }
          if (final_hop) {
            state[b].received.insert(replica.id);
            intact[replica.id] = false;
          } else {
            for (const auto& d : state[b].buffer.insert(replica, now)) intact[d.id] = false;
          }
        }
      }
    }
    for (auto& n : state) {
      for (const auto& d : n.buffer.expire(now)) intact[d.id] = false;
    }

    std::map<MessageId, int> sum;
    bool bad = false;
    for (const auto& n : state) {
      for (const auto& m : n.buffer.entries()) {
        if (m.copies < 1) bad = true;
        sum[m.id] += m.copies;
      }
    }
    for (const auto& [id, ok] : intact) {
      const int total = sum.contains(id) ? sum[id] : 0;
      if (total > initial || (ok && total != initial)) bad = true;
    }
    // forget messages with no replicas left
    for (auto it = intact.begin(); it != intact.end();) {
      it = (!it->second && !sum.contains(it->first)) ? intact.erase(it) : std::next(it);
    }
    out.violations += bad;
    ++out.steps;
  }
  return out;
}

struct ProphetOutcome {
  std::uint64_t steps = 0;
  std::uint64_t violations = 0;
};

/// Random interleavings of encounters, explicit formula updates, aging reads
/// and clock jumps over a handful of tables. Every stored and read value must
/// stay in [0, 1], and the formulas must keep their monotonicity.
inline ProphetOutcome prophet_closure(std::uint64_t seed, std::uint64_t steps, int nodes = 6) {
  auto rng = rng_stream(seed, 1);
  const ProphetParams params{rng.uniform(0.01, 0.99), rng.uniform(0.01, 0.99),
                             rng.uniform(0.01, 0.99)};
  std::vector<PredictabilityTable> tables;
  for (int i = 0; i < nodes; ++i) tables.emplace_back(i, params.alpha);
  double now = 0.0;
  ProphetOutcome out;
  const auto in01 = [](double p) { return p >= 0.0 && p <= 1.0 && !std::isnan(p); };

  for (std::uint64_t s = 0; s < steps; ++s) {
    bool bad = false;
    now += rng.uniform() < 0.9 ? rng.uniform(0, 3) : rng.uniform(0, 500);
    const NodeId a = rng.next_u64() % nodes;
    const NodeId b = (a + 1 + rng.next_u64() % (nodes - 1)) % nodes;
    const double u = rng.uniform();
    if (u < 0.4) {
      prophet_encounter(tables[a], tables[b], now, params);
    } else if (u < 0.6) {
      const double p = tables[a].at(b, now);
      tables[a].set(b, prophet_update_direct(p, params.p0), now);
    } else if (u < 0.8) {
      const NodeId z = rng.next_u64() % nodes;
      const double p = prophet_transitive(tables[a].at(z, now), tables[a].at(b, now),
                                          tables[b].at(z, now), params.beta);
      if (z != a) tables[a].set(z, p, now);
    } else {
      tables[a].age(now);
    }

    // formula monotonicity on fresh random inputs
    const double p1 = rng.uniform();
    const double p2 = p1 + (1 - p1) * rng.uniform();
    const double x = rng.uniform();
    const double y = rng.uniform();
    const double k1 = rng.uniform(0, 100);
    const double k2 = k1 + rng.uniform(0, 100);
    if (prophet_update_direct(p1, x) > prophet_update_direct(p2, x)) bad = true;
    if (prophet_transitive(p1, x, y, params.beta) > prophet_transitive(p2, x, y, params.beta)) bad = true;
    if (prophet_age(p1, params.alpha, k1) < prophet_age(p1, params.alpha, k2)) bad = true;
    if (!in01(prophet_update_direct(p1, x)) || !in01(prophet_transitive(p1, x, y, params.beta)) ||
        !in01(prophet_age(p1, params.alpha, k1))) {
      bad = true;
    }

    for (const auto& t : {tables[a], tables[b]}) {
      for (const auto& [dst, e] : t.entries()) {
        if (!in01(e.p) || !in01(t.at(dst, now))) bad = true;
      }
    }
    out.violations += bad;
    ++out.steps;
  }
  for (const auto& t : tables) {
    for (const auto& [dst, e] : t.entries()) {
      if (!in01(e.p)) ++out.violations;
    }
  }
  return out;
}

}  // namespace properties
