#include "oppnet/routing/router.hpp"

namespace oppnet::routing {

Handoff Router::handoff(const Message& carried, bool peer_is_destination) const {
  if (peer_is_destination) return {true, carried.copies, 0, true};
  return {true, 1, carried.copies, false};
}

namespace {

class EpidemicRouter final : public Router {
 public:
  RouterKind kind() const override { return RouterKind::epidemic; }

  std::vector<Message> plan(const NodeRoutingState& self, const NodeRoutingState& /*peer*/,
                            const IdSet& peer_ids, double now) const override {
    return epidemic_plan(self.buffer, peer_ids, now);
  }
};

class SprayAndWaitRouter final : public Router {
 public:
  explicit SprayAndWaitRouter(int copies) : copies_(copies) {}

  RouterKind kind() const override { return RouterKind::spray_and_wait; }
  int initial_copies() const override { return copies_; }

  std::vector<Message> plan(const NodeRoutingState& self, const NodeRoutingState& peer,
                            const IdSet& peer_ids, double now) const override {
    return snw_plan(self.buffer, peer.id, peer_ids, now);
  }

  // The split uses the carrier's copies at completion time, so concurrent
  // transfers of one message to two peers cannot hand out more copies than
  // the carrier holds.
  Handoff handoff(const Message& carried, bool peer_is_destination) const override {
    const SnwAction action = snw_on_contact(carried, peer_is_destination);
    switch (action.kind) {
      case SnwActionKind::forward_final: return {true, carried.copies, 0, true};
      case SnwActionKind::forward_half: return {true, action.given, action.kept, false};
      case SnwActionKind::hold: break;
    }
    return {false, 0, carried.copies, false};
  }

 private:
  int copies_;
};

class ProphetRouter final : public Router {
 public:
  explicit ProphetRouter(ProphetParams params) : params_(params) {}

  RouterKind kind() const override { return RouterKind::prophet; }

  void on_contact_up(NodeRoutingState& a, NodeRoutingState& b, double now) override {
    prophet_encounter(a.predictability, b.predictability, now, params_);
  }

  std::vector<Message> plan(const NodeRoutingState& self, const NodeRoutingState& peer,
                            const IdSet& peer_ids, double now) const override {
    return prophet_plan(self.predictability, peer.predictability, self.buffer, peer_ids, now);
  }

 private:
  ProphetParams params_;
};

}  // namespace

std::unique_ptr<Router> make_router(const RouterParams& params) {
  switch (params.kind) {
    case RouterKind::epidemic: return std::make_unique<EpidemicRouter>();
    case RouterKind::spray_and_wait:
      return std::make_unique<SprayAndWaitRouter>(params.snw_initial_copies);
    case RouterKind::prophet:
      return std::make_unique<ProphetRouter>(
          ProphetParams{params.prophet_p0, params.prophet_beta, params.prophet_alpha});
  }
  return nullptr;
}

}  // namespace oppnet::routing
