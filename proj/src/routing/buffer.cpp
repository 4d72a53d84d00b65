#include "oppnet/routing/buffer.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace oppnet::routing {

DuplicateMessage::DuplicateMessage(MessageId id)
    : std::invalid_argument("message " + std::to_string(id) + " is already buffered") {}

Buffer::Buffer(std::uint64_t capacity)
    : capacity_(capacity), earliest_expiry_(std::numeric_limits<double>::infinity()) {}

std::vector<Message> Buffer::insert(Message msg, double now) {
  if (contains(msg.id)) throw DuplicateMessage(msg.id);
  if (msg.expired(now)) throw std::invalid_argument("cannot buffer an expired message");

  std::vector<Message> dropped;
  if (msg.size > capacity_) {
    dropped.push_back(std::move(msg));
    return dropped;
  }
  std::size_t evict = 0;
  std::uint64_t occupancy = occupancy_;
  while (occupancy + msg.size > capacity_) {
    occupancy -= entries_[evict].size;
    ++evict;
  }
  dropped.assign(std::make_move_iterator(entries_.begin()),
                 std::make_move_iterator(entries_.begin() + static_cast<std::ptrdiff_t>(evict)));
  entries_.erase(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(evict));
  occupancy_ = occupancy + msg.size;
  earliest_expiry_ = std::min(earliest_expiry_, msg.expires_at());
  entries_.push_back(std::move(msg));
  return dropped;
}

std::vector<Message> Buffer::expire(double now) {
  std::vector<Message> dropped;
  if (!(earliest_expiry_ < now)) return dropped;
  auto keep = std::stable_partition(entries_.begin(), entries_.end(),
                                    [now](const Message& m) { return !m.expired(now); });
  for (auto it = keep; it != entries_.end(); ++it) {
    occupancy_ -= it->size;
    dropped.push_back(std::move(*it));
  }
  entries_.erase(keep, entries_.end());
  earliest_expiry_ = std::numeric_limits<double>::infinity();
  for (const auto& m : entries_) earliest_expiry_ = std::min(earliest_expiry_, m.expires_at());
  return dropped;
}

std::optional<Message> Buffer::remove(MessageId id) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [id](const Message& m) { return m.id == id; });
  if (it == entries_.end()) return std::nullopt;
  Message out = std::move(*it);
  entries_.erase(it);
  occupancy_ -= out.size;
  return out;
}

const Message* Buffer::find(MessageId id) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [id](const Message& m) { return m.id == id; });
  return it == entries_.end() ? nullptr : &*it;
}

Message* Buffer::find(MessageId id) {
  return const_cast<Message*>(std::as_const(*this).find(id));
}

}  // namespace oppnet::routing
