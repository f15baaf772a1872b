#include "oransim/sim/event_queue.hpp"

#include <utility>

#include "oransim/errors.hpp"

namespace oransim::sim {

EventId EventQueue::schedule(SimTime due, std::function<void()> action,
                             const char* kind) {
  if (due < clock_) {
    throw ConfigError("event scheduled in the past: due=" +
                      std::to_string(due.ms) +
                      "ms, now=" + std::to_string(clock_.ms) + "ms");
  }
  const EventId id = next_id_++;
  heap_.push(Entry{due, next_seq_++, id, std::move(action), kind});
  live_.insert(id);
  ++stats_.scheduled;
  return id;
}

bool EventQueue::cancel(EventId id) {
  if (live_.erase(id) == 0) return false;
  cancelled_.insert(id);
  ++stats_.cancelled;
  return true;
}

bool EventQueue::empty() const {
  return live_.empty();
}

std::size_t EventQueue::pending() const {
  return live_.size();
}

bool EventQueue::step() {
  while (!heap_.empty()) {
    Entry e = heap_.top();
    heap_.pop();
    if (cancelled_.erase(e.id) > 0) continue;
    live_.erase(e.id);
    clock_ = e.due;
    ++stats_.dispatched;
    e.action();
    return true;
  }
  return false;
}

void EventQueue::run_until(SimTime until) {
  for (;;) {
    // Skip cancelled entries so the top's due time is a live event's.
    while (!heap_.empty() && cancelled_.count(heap_.top().id) > 0) {
      cancelled_.erase(heap_.top().id);
      heap_.pop();
    }
    if (heap_.empty() || heap_.top().due > until) break;
    step();
  }
  // Events past the run window are dropped and counted as cancelled, so every
  // scheduled event is accounted for exactly once.
  while (!heap_.empty()) {
    Entry e = heap_.top();
    heap_.pop();
    if (cancelled_.erase(e.id) > 0) continue;
    live_.erase(e.id);
    ++stats_.cancelled;
  }
  if (until > clock_) clock_ = until;
}

}  // namespace oransim::sim
