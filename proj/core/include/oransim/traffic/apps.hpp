#pragma once

#include <cstdint>
#include <vector>

#include "oransim/sim/rng.hpp"
#include "oransim/sim/time.hpp"

namespace oransim::traffic {

struct StreamConfig {
  std::uint32_t frame_period_ms = 100;
  double mean_frame_bytes = 50000.0;  // ~4 Mbps offered at 10 fps
  double lognormal_sigma = 0.3;
  std::vector<std::int64_t> frame_trace;  // overrides synthetic sizes
  int prebuffer_frames = 3;
};

struct OtaConfig {
  std::int64_t total_bytes = 35'600'000;
  std::int64_t packet_bytes = 1024;
  std::uint32_t interval_ms = 5;

  std::int64_t packet_count() const {
    return (total_bytes + packet_bytes - 1) / packet_bytes;
  }
  double offered_bps() const {
    return static_cast<double>(packet_bytes) * 8.0 * 1000.0 /
           static_cast<double>(interval_ms);
  }
};

/// Variable-bitrate frame sizes: trace-driven when one is given, otherwise
/// seeded log-normal around the configured mean.
class StreamSource {
 public:
  StreamSource(const StreamConfig& config, std::uint64_t seed,
               std::uint32_t ue);

  std::int64_t next_frame_bytes();
  std::uint64_t frames_emitted() const { return count_; }

 private:
  StreamConfig config_;
  sim::RngStream rng_;
  double mu_ = 0.0;
  std::uint64_t count_ = 0;
};

/// Playback model: display_n = max(arrival_n, display_{n-1} + period),
/// starting once the prebuffer is full. A freeze is an inter-display gap
/// over the period; its duration is the excess.
class StreamReceiver {
 public:
  struct Freeze {
    sim::SimTime at;  // when the picture stalls
    std::int64_t duration_ms = 0;
  };

  StreamReceiver(std::uint32_t frame_period_ms, int prebuffer_frames);

  void on_frame(sim::SimTime arrival);

  const std::vector<Freeze>& freezes() const { return freezes_; }
  std::int64_t freeze_total_ms() const;
  std::uint64_t frames_displayed() const { return displayed_; }

 private:
  std::int64_t period_ms_;
  int prebuffer_;
  std::vector<sim::SimTime> buffered_;  // arrivals before playback start
  bool started_ = false;
  sim::SimTime last_display_{0};
  std::uint64_t displayed_ = 0;
  std::vector<Freeze> freezes_;
};

/// Download progress tracker; completion is the delivery instant that
/// reaches the configured byte total.
class OtaReceiver {
 public:
  explicit OtaReceiver(const OtaConfig& config) : config_(config) {}

  void on_delivery(std::int64_t bytes, sim::SimTime t);

  bool complete() const { return complete_; }
  sim::SimTime completion_time() const { return completion_; }
  std::int64_t received_bytes() const { return received_; }

 private:
  OtaConfig config_;
  std::int64_t received_ = 0;
  bool complete_ = false;
  sim::SimTime completion_{0};
};

}  // namespace oransim::traffic
