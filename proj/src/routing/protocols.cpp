#include "oppnet/routing/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace oppnet::routing {

namespace {

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::out_of_range(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

bool older(const Message& a, const Message& b) {
  if (a.created_at != b.created_at) return a.created_at < b.created_at;
  return a.id < b.id;
}

std::vector<Message> missing_at_peer(const Buffer& self, const IdSet& peer_ids, double now) {
  std::vector<Message> out;
  for (const auto& m : self.entries()) {
    if (!m.expired(now) && !peer_ids.contains(m.id)) out.push_back(m);
  }
  return out;
}

}  // namespace

std::vector<Message> epidemic_plan(const Buffer& self, const IdSet& peer_ids, double now) {
  auto plan = missing_at_peer(self, peer_ids, now);
  std::stable_sort(plan.begin(), plan.end(), older);
  return plan;
}

SnwAction snw_on_contact(const Message& msg, bool peer_is_destination) {
  if (peer_is_destination) return {SnwActionKind::forward_final, 0, msg.copies};
  if (msg.copies > 1) {
    const int given = msg.copies / 2;
    return {SnwActionKind::forward_half, msg.copies - given, given};
  }
  return {SnwActionKind::hold, msg.copies, 0};
}

std::vector<Message> snw_plan(const Buffer& self, NodeId peer, const IdSet& peer_ids, double now) {
  auto plan = missing_at_peer(self, peer_ids, now);
  std::erase_if(plan, [peer](const Message& m) {
    return snw_on_contact(m, m.dst == peer).kind == SnwActionKind::hold;
  });
  std::stable_sort(plan.begin(), plan.end(), older);
  return plan;
}

double prophet_update_direct(double p, double p0) {
  require_unit(p, "p");
  require_unit(p0, "p0");
  return std::min(1.0, (1.0 - p) * p0 + p);
}

double prophet_age(double p, double alpha, double k) {
  require_unit(p, "p");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::out_of_range("alpha must lie in (0, 1)");
  if (!(k >= 0.0)) throw std::out_of_range("k must be non-negative");
  return std::pow(alpha, k) * p;
}

double prophet_transitive(double p_iz, double p_ij, double p_jz, double beta) {
  require_unit(p_iz, "p_iz");
  require_unit(p_ij, "p_ij");
  require_unit(p_jz, "p_jz");
  require_unit(beta, "beta");
  return std::min(1.0, p_iz + (1.0 - p_iz) * p_ij * p_jz * beta);
}

double PredictabilityTable::at(NodeId dst, double now) const {
  if (dst == owner_) return 1.0;
  auto it = entries_.find(dst);
  if (it == entries_.end()) return 0.0;
  const double k = std::floor(now - it->second.last_update);
  return k > 0.0 ? prophet_age(it->second.p, alpha_, k) : it->second.p;
}

void PredictabilityTable::age(double now) {
  for (auto& [dst, e] : entries_) {
    const double k = std::floor(now - e.last_update);
    if (k > 0.0) {
      e.p = prophet_age(e.p, alpha_, k);
      e.last_update += k;
    }
  }
}

void PredictabilityTable::set(NodeId dst, double p, double now) {
  require_unit(p, "p");
  entries_[dst] = Entry{p, now};
}

void prophet_encounter(PredictabilityTable& a, PredictabilityTable& b, double now,
                       const ProphetParams& params) {
  a.age(now);
  b.age(now);
  const NodeId ia = a.owner();
  const NodeId ib = b.owner();
  a.set(ib, prophet_update_direct(a.at(ib, now), params.p0), now);
  b.set(ia, prophet_update_direct(b.at(ia, now), params.p0), now);

  const PredictabilityTable a0 = a;
  const PredictabilityTable b0 = b;
  const auto transit = [&](PredictabilityTable& self, const PredictabilityTable& self0,
                           const PredictabilityTable& peer0) {
    const NodeId i = self0.owner();
    const NodeId j = peer0.owner();
    const double p_ij = self0.at(j, now);
    for (const auto& [z, entry] : peer0.entries()) {
      if (z == i || z == j) continue;
      const double updated = prophet_transitive(self0.at(z, now), p_ij, peer0.at(z, now), params.beta);
      self.set(z, updated, now);
    }
  };
  transit(a, a0, b0);
  transit(b, b0, a0);
}

std::vector<Message> prophet_plan(const PredictabilityTable& self, const PredictabilityTable& peer,
                                  const Buffer& self_buf, const IdSet& peer_ids, double now) {
  struct Ranked {
    double peer_p;
    Message msg;
  };
  std::vector<Ranked> ranked;
  for (auto& m : missing_at_peer(self_buf, peer_ids, now)) {
    const double theirs = peer.at(m.dst, now);
    if (m.dst == peer.owner() || theirs > self.at(m.dst, now)) {
      ranked.push_back({theirs, std::move(m)});
    }
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const Ranked& x, const Ranked& y) {
    if (x.peer_p != y.peer_p) return x.peer_p > y.peer_p;
    return older(x.msg, y.msg);
  });
  std::vector<Message> plan;
  plan.reserve(ranked.size());
  for (auto& r : ranked) plan.push_back(std::move(r.msg));
  return plan;
}

}  // namespace oppnet::routing
