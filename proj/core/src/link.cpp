#include "oransim/traffic/link.hpp"

#include <algorithm>

#include "oransim/errors.hpp"

namespace oransim::traffic {

double LinkModel::capacity_bps(int cqi) const {
  if (cqi < 0 || cqi > 15) throw ConfigError("cqi out of range");
  return cqi_efficiency[static_cast<std::size_t>(cqi)] * bandwidth_share_hz;
}

void InterruptionSchedule::add(sim::SimTime from, sim::SimTime to) {
  if (to < from) throw ConfigError("interruption window reversed");
  windows_.emplace_back(from, to);
}

bool InterruptionSchedule::active(sim::SimTime t) const {
  for (const auto& [from, to] : windows_) {
    if (from <= t && t < to) return true;
  }
  return false;
}

double InterruptionSchedule::available_fraction(sim::SimTime t0,
                                                sim::SimTime t1) const {
  if (t1 <= t0) return 1.0;
  const double span = static_cast<double>((t1 - t0).ms);
  double blocked = 0.0;
  for (const auto& [from, to] : windows_) {
    const std::int64_t lo = std::max(t0.ms, from.ms);
    const std::int64_t hi = std::min(t1.ms, to.ms);
    if (hi > lo) blocked += static_cast<double>(hi - lo);
  }
  blocked = std::min(blocked, span);
  return 1.0 - blocked / span;
}

void LinkQueue::enqueue(std::int64_t bytes, sim::SimTime now) {
  if (bytes <= 0) throw ConfigError("packet size must be positive");
  queue_.push_back(Packet{bytes, now, static_cast<double>(bytes) * 8.0});
  ++enqueued_;
}

std::vector<LinkQueue::Delivery> LinkQueue::serve(double capacity_bits,
                                                  sim::SimTime tick_end) {
  std::vector<Delivery> out;
  double budget = capacity_bits;
  while (!queue_.empty() && budget > 0.0) {
    Packet& front = queue_.front();
    if (front.remaining_bits > budget) {
      front.remaining_bits -= budget;
      budget = 0.0;
      break;
    }
    budget -= front.remaining_bits;
    Delivery d;
    d.enqueued = front.enqueued;
    d.delivered = tick_end;
    d.bytes = front.bytes;
    d.delay_ms = static_cast<double>((tick_end - front.enqueued).ms) + 1.0;
    out.push_back(d);
    queue_.pop_front();
    ++delivered_;
  }
  return out;
}

double LinkQueue::queued_bits() const {
  double total = 0.0;
  for (const Packet& p : queue_) total += p.remaining_bits;
  return total;
}

}  // namespace oransim::traffic
