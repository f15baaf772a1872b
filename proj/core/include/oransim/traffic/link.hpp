#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <vector>

#include "oransim/sim/time.hpp"

namespace oransim::traffic {

/// Fluid capacity model: CQI picks a spectral efficiency, the UE gets a
/// fixed bandwidth share, handovers zero the link for a fixed outage.
struct LinkModel {
  std::array<double, 16> cqi_efficiency = {
      0.0,    0.1523, 0.3770, 0.8770, 1.4766, 1.9141, 2.4063, 2.7305,
      3.3223, 3.9023, 4.5234, 5.1152, 5.5547, 6.2266, 6.9141, 7.4063};
  double bandwidth_share_hz = 5e6;
  std::uint32_t interruption_ms = 50;

  double capacity_bps(int cqi) const;
};

/// Half-open outage intervals. The ping-pong guard keeps them disjoint in
/// practice; overlap is tolerated and unioned.
class InterruptionSchedule {
 public:
  void add(sim::SimTime from, sim::SimTime to);
  bool active(sim::SimTime t) const;
  /// Fraction of [t0, t1) outside every outage window.
  double available_fraction(sim::SimTime t0, sim::SimTime t1) const;
  std::size_t count() const { return windows_.size(); }

 private:
  std::vector<std::pair<sim::SimTime, sim::SimTime>> windows_;
};

/// Lossless FIFO byte queue drained by a per-tick bit budget. A packet
/// completes when its last bit drains; its delay is the tick-end time minus
/// enqueue time plus 1 ms propagation.
class LinkQueue {
 public:
  struct Delivery {
    sim::SimTime enqueued;
    sim::SimTime delivered;  // tick end
    std::int64_t bytes = 0;
    double delay_ms = 0.0;
  };

  void enqueue(std::int64_t bytes, sim::SimTime now);

  /// Drains up to capacity_bits, credits completed packets at tick_end.
  std::vector<Delivery> serve(double capacity_bits, sim::SimTime tick_end);

  std::size_t queued_packets() const { return queue_.size(); }
  double queued_bits() const;
  std::uint64_t enqueued_packets() const { return enqueued_; }
  std::uint64_t delivered_packets() const { return delivered_; }

 private:
  struct Packet {
    std::int64_t bytes;
    sim::SimTime enqueued;
    double remaining_bits;
  };
  std::deque<Packet> queue_;
  std::uint64_t enqueued_ = 0;
  std::uint64_t delivered_ = 0;
};

}  // namespace oransim::traffic
