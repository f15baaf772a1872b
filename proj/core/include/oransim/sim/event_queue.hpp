#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_set>
#include <vector>

#include "oransim/sim/time.hpp"

namespace oransim::sim {

using EventId = std::uint64_t;

/// Deterministic discrete-event queue. Events with equal due time dispatch in
/// insertion order, so a run never depends on container iteration order.
class EventQueue {
 public:
  struct Stats {
    std::uint64_t scheduled = 0;
    std::uint64_t dispatched = 0;
    std::uint64_t cancelled = 0;
  };

  /// Enqueue an event. Throws ConfigError if due < now() (causality).
  EventId schedule(SimTime due, std::function<void()> action,
                   const char* kind = "");

  /// Cancel a pending event; returns false if already dispatched or unknown.
  bool cancel(EventId id);

  SimTime now() const { return clock_; }
  bool empty() const;
  std::size_t pending() const;
  const Stats& stats() const { return stats_; }

  /// Dispatch events until the queue drains or the next due time exceeds
  /// `until`. The clock ends at `until`. Undispatched events are cancelled.
  void run_until(SimTime until);

  /// Dispatch a single event if one is pending; returns false otherwise.
  bool step();

 private:
  struct Entry {
    SimTime due;
    std::uint64_t seq;
    EventId id;
    std::function<void()> action;
    const char* kind;
    bool operator>(const Entry& rhs) const {
      if (due != rhs.due) return due > rhs.due;
      return seq > rhs.seq;
    }
  };

  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
  std::unordered_set<EventId> live_;
  std::unordered_set<EventId> cancelled_;
  SimTime clock_{0};
  std::uint64_t next_seq_ = 0;
  EventId next_id_ = 1;
  Stats stats_;
};

}  // namespace oransim::sim
