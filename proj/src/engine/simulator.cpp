#include "oppnet/engine/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oppnet::engine {

namespace {

constexpr double kTimeEpsilon = 1e-9;

std::string copies_detail(int copies) { return "copies=" + std::to_string(copies); }

}  // namespace

std::vector<NodePair> detect_contacts(std::span<const Point> positions,
                                      std::span<const NodeSpec> specs) {
  std::vector<NodePair> pairs;
  const std::size_t n = positions.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double range = std::min(specs[i].rf_range, specs[j].rf_range);
      if (distance_squared(positions[i], positions[j]) <= range * range) pairs.emplace_back(i, j);
    }
  }
  return pairs;
}

std::vector<TransferRecord> transfer_step(LinkQueue& queue, double& budget, double now) {
  std::vector<TransferRecord> done;
  while (budget > 0.0 && !queue.pending.empty()) {
    PendingTransfer& head = queue.pending.front();
    const double need = static_cast<double>(head.message.size) - head.bytes_moved;
    if (budget < need) {
      head.bytes_moved += budget;
      budget = 0.0;
      break;
    }
    budget -= need;
    done.push_back({head.message.id, queue.from, queue.to, head.started, now, false,
                    static_cast<double>(head.message.size)});
    queue.pending.pop_front();
  }
  return done;
}

std::vector<TransferRecord> transfer_step(LinkQueue& queue, double bit_rate, double dt, double now) {
  double budget = bit_rate * dt;
  return transfer_step(queue, budget, now);
}

std::vector<TransferRecord> abort_transfers(LinkQueue& queue, double now) {
  std::vector<TransferRecord> aborted;
  for (const auto& p : queue.pending) {
    aborted.push_back({p.message.id, queue.from, queue.to, p.started, std::nullopt, true, 0.0});
    (void)now;
  }
  queue.pending.clear();
  return aborted;
}

std::vector<routing::Message> generate_traffic(double now, double dt, const TrafficSpec& traffic,
                                               NodeId source, NodeId destination,
                                               routing::MessageId& next_id, int copies) {
  std::vector<routing::Message> out;
  const double interval = traffic.generation_interval;
  // Schedule points k * interval (k >= 1) inside (now - dt, now].
  const auto first = static_cast<long long>(std::floor((now - dt) / interval + kTimeEpsilon)) + 1;
  const auto last = static_cast<long long>(std::floor(now / interval + kTimeEpsilon));
  for (long long k = std::max(first, 1LL); k <= last; ++k) {
    for (auto [from, to] : {std::pair{source, destination}, std::pair{destination, source}}) {
      routing::Message m;
      m.id = next_id++;
      m.src = from;
      m.dst = to;
      m.size = traffic.packet_size;
      m.created_at = now;
      m.ttl = traffic.ttl;
      m.copies = copies;
      out.push_back(m);
    }
  }
  return out;
}

Simulator::Simulator(const ScenarioConfig& config)
    : config_(validate_scenario(config)),
      router_(routing::make_router(config_.router)),
      dt_(config_.time_step),
      traffic_rng_(config_.seed, kTrafficStream) {
  source_ = config_.source();
  destination_ = config_.destination();
  total_steps_ = static_cast<std::uint64_t>(std::llround(config_.sim_time / dt_));
  nodes_.reserve(config_.nodes.size());
  for (const auto& spec : config_.nodes) {
    Node& node = nodes_.emplace_back(spec, config_.seed, config_.router.prophet_alpha);
    node.motion = mobility::initial_state(spec, config_.field, node.rng);
    node.position = node.motion.target;
  }
}

Simulator::Simulator(const ScenarioConfig& config, std::vector<ContactInterval> trace,
                     std::vector<MessageInjection> injections)
    : Simulator(config) {
  for (const auto& c : trace) {
    if (c.a == c.b || c.a >= nodes_.size() || c.b >= nodes_.size() || c.end < c.start) {
      throw std::invalid_argument("invalid contact interval in trace");
    }
  }
  trace_ = std::move(trace);
  std::stable_sort(injections.begin(), injections.end(),
                   [](const MessageInjection& x, const MessageInjection& y) { return x.time < y.time; });
  for (const auto& inj : injections) {
    if (inj.src == inj.dst || inj.src >= nodes_.size() || inj.dst >= nodes_.size()) {
      throw std::invalid_argument("invalid message injection");
    }
  }
  injections_ = std::move(injections);
}

Simulator::~Simulator() = default;

void Simulator::set_mobility_state(NodeId id, const mobility::MobilityState& state) {
  Node& node = nodes_.at(id);
  if (node.spec.is_static()) throw std::invalid_argument("static nodes have no mobility state");
  node.motion = state;
  node.position = mobility::position_at(state, std::clamp(now_, state.leg_start, state.pause_until));
}

void Simulator::run_to_end() {
  while (!finished()) step();
}

void Simulator::step() {
  if (finished()) return;
  const double previous = now_;
  ++step_index_;
  now_ = static_cast<double>(step_index_) * dt_;

  move_nodes();
  expire_messages();
  update_contacts();
  exchange();
  inject_traffic(previous);
}

void Simulator::move_nodes() {
  if (trace_) return;
  for (auto& node : nodes_) {
    if (node.spec.is_static()) continue;
    while (now_ >= node.motion.pause_until) {
      node.motion = mobility::advance(node.motion, node.motion.pause_until, node.spec,
                                      config_.field, node.rng);
    }
    node.position = mobility::position_at(node.motion, now_);
  }
}

void Simulator::expire_messages() {
  for (auto& node : nodes_) {
    for (const auto& m : node.routing.buffer.expire(now_)) {
      log_.append({now_, EventKind::dropped_ttl, m.id, node.spec.id, std::nullopt, {}});
    }
  }
  // Transfers whose sender no longer holds the message cannot finish.
  for (auto& [pair, link] : links_) {
    for (LinkQueue* q : {&link.forward, &link.backward}) {
      if (q->pending.empty()) continue;
      const auto id = q->pending.front().message.id;
      if (!nodes_[q->from].routing.buffer.contains(id)) abort_queue(*q, "expired");
    }
  }
}

std::vector<NodePair> Simulator::current_pairs() const {
  if (!trace_) {
    std::vector<Point> positions;
    positions.reserve(nodes_.size());
    for (const auto& n : nodes_) positions.push_back(n.position);
    return detect_contacts(positions, config_.nodes);
  }
  std::vector<NodePair> pairs;
  for (const auto& c : *trace_) {
    if (c.start <= now_ + kTimeEpsilon && now_ <= c.end + kTimeEpsilon) {
      pairs.emplace_back(std::min(c.a, c.b), std::max(c.a, c.b));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

void Simulator::update_contacts() {
  const auto pairs = current_pairs();

  for (auto it = links_.begin(); it != links_.end();) {
    if (std::binary_search(pairs.begin(), pairs.end(), it->first)) {
      ++it;
      continue;
    }
    abort_queue(it->second.forward, "contact_down");
    abort_queue(it->second.backward, "contact_down");
    contacts_[it->second.contact_index].end = now_;
    log_.append({now_, EventKind::contact_down, std::nullopt, it->first.first, it->first.second, {}});
    it = links_.erase(it);
  }

  for (const auto& pair : pairs) {
    if (links_.contains(pair)) continue;
    Link link;
    link.contact_index = contacts_.size();
    link.forward.from = link.backward.to = pair.first;
    link.forward.to = link.backward.from = pair.second;
    contacts_.push_back({pair.first, pair.second, now_, std::nullopt});
    links_.emplace(pair, std::move(link));
    log_.append({now_, EventKind::contact_up, std::nullopt, pair.first, pair.second, {}});
    router_->on_contact_up(nodes_[pair.first].routing, nodes_[pair.second].routing, now_);
  }
}

void Simulator::exchange() {
  if (links_.empty()) return;

  // Each sender splits its per-step byte budget evenly over its open links.
  std::vector<int> degree(nodes_.size(), 0);
  for (const auto& [pair, link] : links_) {
    ++degree[pair.first];
    ++degree[pair.second];
  }
  struct Budgets {
    double forward;
    double backward;
  };
  std::map<NodePair, Budgets> budgets;
  for (const auto& [pair, link] : links_) {
    budgets[pair] = {nodes_[pair.first].spec.bit_rate * dt_ / degree[pair.first],
                     nodes_[pair.second].spec.bit_rate * dt_ / degree[pair.second]};
  }

  bool progress = true;
  while (progress) {
    progress = false;
    for (auto& [pair, link] : links_) {
      Budgets& b = budgets[pair];
      progress |= service(link.forward, b.forward);
      progress |= service(link.backward, b.backward);
    }
  }
}

bool Simulator::service(LinkQueue& queue, double& budget) {
  bool completed_any = false;
  while (budget > 0.0) {
    if (queue.pending.empty() && !top_up(queue)) break;
    const auto done = transfer_step(queue, budget, now_);
    for (const auto& record : done) complete(record);
    completed_any |= !done.empty();
  }
  return completed_any;
}

bool Simulator::top_up(LinkQueue& queue) {
  Node& self = nodes_[queue.from];
  Node& peer = nodes_[queue.to];
  if (self.routing.buffer.empty()) return false;

  routing::IdSet peer_ids = peer.incoming;
  peer_ids.insert(peer.routing.received.begin(), peer.routing.received.end());
  for (const auto& m : peer.routing.buffer.entries()) peer_ids.insert(m.id);

  auto plan = router_->plan(self.routing, peer.routing, peer_ids, now_);
  if (plan.empty()) return false;
  // Final hops go ahead of replication.
  auto head = std::find_if(plan.begin(), plan.end(),
                           [&](const routing::Message& m) { return m.dst == queue.to; });
  if (head == plan.end()) head = plan.begin();

  peer.incoming.insert(head->id);
  queue.pending.push_back({*head, now_, 0.0});
  return true;
}

void Simulator::complete(const TransferRecord& record) {
  Node& sender = nodes_[record.from];
  Node& receiver = nodes_[record.to];
  receiver.incoming.erase(record.message);

  routing::Message* carried = sender.routing.buffer.find(record.message);
  const auto abort = [&](std::string reason) {
    log_.append({now_, EventKind::transfer_aborted, record.message, record.from, record.to,
                 std::move(reason)});
  };
  if (carried == nullptr) return abort("sender_lost");
  if (receiver.routing.knows(record.message)) return abort("duplicate");

  const bool final_hop = carried->dst == record.to;
  const routing::Handoff h = router_->handoff(*carried, final_hop);
  if (!h.accepted) return abort("refused");

  log_.append({now_, EventKind::relayed, record.message, record.from, record.to,
               copies_detail(h.receiver_copies)});
  if (final_hop) {
    receiver.routing.received.insert(record.message);
    if (delivered_.insert(record.message).second) {
      log_.append({now_, EventKind::delivered, record.message, record.from, record.to, {}});
    }
  } else {
    routing::Message replica = *carried;
    replica.copies = h.receiver_copies;
    ++replica.hops;
    if (h.sender_drops) {
      sender.routing.buffer.remove(record.message);
    } else {
      carried->copies = h.sender_copies;
    }
    buffer_message(receiver, std::move(replica));
    return;
  }
  if (h.sender_drops) {
    sender.routing.buffer.remove(record.message);
  } else {
    carried->copies = h.sender_copies;
  }
}

void Simulator::abort_queue(LinkQueue& queue, std::string_view reason) {
  for (const auto& record : abort_transfers(queue, now_)) {
    nodes_[record.to].incoming.erase(record.message);
    log_.append({now_, EventKind::transfer_aborted, record.message, record.from, record.to,
                 std::string(reason)});
  }
}

void Simulator::buffer_message(Node& node, routing::Message msg) {
  for (const auto& dropped : node.routing.buffer.insert(std::move(msg), now_)) {
    log_.append({now_, EventKind::dropped_buffer, dropped.id, node.spec.id, std::nullopt, {}});
  }
}

void Simulator::create_message(NodeId src, NodeId dst) {
  routing::Message m;
  m.id = next_message_id_++;
  m.src = src;
  m.dst = dst;
  m.size = config_.traffic.packet_size;
  m.created_at = now_;
  m.ttl = config_.traffic.ttl;
  m.copies = router_->initial_copies();
  log_.append({now_, EventKind::created, m.id, src, dst, {}});
  buffer_message(nodes_[src], std::move(m));
}

void Simulator::inject_traffic(double window_start) {
  if (trace_) {
    while (next_injection_ < injections_.size() &&
           injections_[next_injection_].time <= now_ + kTimeEpsilon) {
      const auto& inj = injections_[next_injection_++];
      create_message(inj.src, inj.dst);
    }
    return;
  }
  for (auto& m : generate_traffic(now_, now_ - window_start, config_.traffic, source_, destination_,
                                  next_message_id_, router_->initial_copies())) {
    log_.append({now_, EventKind::created, m.id, m.src, m.dst, {}});
    buffer_message(nodes_[m.src], std::move(m));
  }
}

RunResult run(const ScenarioConfig& config) {
  Simulator sim(config);
  sim.run_to_end();
  RunResult result;
  result.metrics = compute_metrics(sim.log());
  result.encounters = count_encounters(sim.log(), sim.config().source(), sim.config().destination());
  result.log = sim.log();
  result.contacts = sim.contacts();
  return result;
}

std::optional<double> mean_endpoint_contact_duration(const ScenarioConfig& config,
                                                     std::span<const ContactEvent> contacts) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& c : contacts) {
    const bool a_static = config.nodes.at(c.node_a).is_static();
    const bool b_static = config.nodes.at(c.node_b).is_static();
    if (a_static == b_static || !c.end) continue;
    sum += *c.duration();
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace oppnet::engine
