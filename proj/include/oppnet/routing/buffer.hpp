#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "oppnet/scenario.hpp"

namespace oppnet::routing {

using MessageId = std::uint64_t;

struct Message {
  MessageId id = 0;
  NodeId src = 0;
  NodeId dst = 0;
  std::uint64_t size = 0;
  double created_at = 0.0;
  double ttl = 0.0;
  int copies = 1;  // spray-and-wait logical copies carried by this replica
  int hops = 0;

  double expires_at() const { return created_at + ttl; }
  /// A message is still alive at exactly created_at + ttl.
  bool expired(double now) const { return expires_at() < now; }

  friend bool operator==(const Message&, const Message&) = default;
};

class DuplicateMessage : public std::invalid_argument {
 public:
  explicit DuplicateMessage(MessageId id);
};

/// Byte-bounded store kept in insertion order. Overflow evicts the oldest
/// insertions first.
class Buffer {
 public:
  explicit Buffer(std::uint64_t capacity);

  /// Inserts `msg`, evicting from the front until it fits, and returns what
  /// was evicted. A message larger than the whole capacity is not inserted and
  /// comes back as the only dropped entry. Throws DuplicateMessage when the id
  /// is already held and std::invalid_argument when `msg` expired before `now`.
  std::vector<Message> insert(Message msg, double now);

  /// Removes and returns every entry with created_at + ttl < now.
  std::vector<Message> expire(double now);

  std::optional<Message> remove(MessageId id);

  bool contains(MessageId id) const { return find(id) != nullptr; }
  const Message* find(MessageId id) const;
  Message* find(MessageId id);

  const std::vector<Message>& entries() const { return entries_; }
  std::uint64_t capacity() const { return capacity_; }
  std::uint64_t occupancy() const { return occupancy_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::uint64_t capacity_;
  std::uint64_t occupancy_ = 0;
  std::vector<Message> entries_;
  double earliest_expiry_;
};

}  // namespace oppnet::routing
