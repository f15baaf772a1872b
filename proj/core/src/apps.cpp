#include "oransim/traffic/apps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oransim/errors.hpp"

namespace oransim::traffic {

StreamSource::StreamSource(const StreamConfig& config, std::uint64_t seed,
                           std::uint32_t ue)
    : config_(config),
      rng_("traffic/frames/ue" + std::to_string(ue), seed) {
  if (config_.frame_period_ms == 0) {
    throw ConfigError("frame_period_ms must be positive");
  }
  if (config_.frame_trace.empty()) {
    if (config_.mean_frame_bytes <= 0.0) {
      throw ConfigError("mean_frame_bytes must be positive");
    }
    if (config_.lognormal_sigma < 0.0) {
      throw ConfigError("lognormal_sigma must be non-negative");
    }
    // mean of exp(N(mu, sigma^2)) equals the configured mean
    mu_ = std::log(config_.mean_frame_bytes) -
          0.5 * config_.lognormal_sigma * config_.lognormal_sigma;
  }
}

std::int64_t StreamSource::next_frame_bytes() {
  std::int64_t bytes = 0;
  if (!config_.frame_trace.empty()) {
    bytes = config_.frame_trace[count_ % config_.frame_trace.size()];
  } else {
    const double draw = std::exp(mu_ + config_.lognormal_sigma * rng_.normal());
    bytes = static_cast<std::int64_t>(std::llround(draw));
  }
  ++count_;
  return std::max<std::int64_t>(bytes, 1);
}

StreamReceiver::StreamReceiver(std::uint32_t frame_period_ms,
                               int prebuffer_frames)
    : period_ms_(frame_period_ms), prebuffer_(prebuffer_frames) {
  if (frame_period_ms == 0) {
    throw ConfigError("frame_period_ms must be positive");
  }
  if (prebuffer_frames < 1) {
    throw ConfigError("prebuffer_frames must be at least 1");
  }
}

void StreamReceiver::on_frame(sim::SimTime arrival) {
  if (!started_) {
    buffered_.push_back(arrival);
    if (static_cast<int>(buffered_.size()) < prebuffer_) {
      return;
    }
    // playback starts when the buffer fills; queued frames display
    // back-to-back at the frame period
    started_ = true;
    sim::SimTime display = buffered_.back();
    for (std::size_t i = 0; i < buffered_.size(); ++i) {
      last_display_ = display;
      ++displayed_;
      display = sim::SimTime{display.ms + period_ms_};
    }
    buffered_.clear();
    return;
  }
  const sim::SimTime due{last_display_.ms + period_ms_};
  const sim::SimTime display = arrival.ms > due.ms ? arrival : due;
  if (display.ms > due.ms) {
    freezes_.push_back(Freeze{due, display.ms - due.ms});
  }
  last_display_ = display;
  ++displayed_;
}

std::int64_t StreamReceiver::freeze_total_ms() const {
  std::int64_t total = 0;
  for (const auto& f : freezes_) total += f.duration_ms;
  return total;
}

void OtaReceiver::on_delivery(std::int64_t bytes, sim::SimTime t) {
  if (complete_) return;
  received_ += bytes;
  if (received_ >= config_.total_bytes) {
    complete_ = true;
    completion_ = t;
  }
}

}  // namespace oransim::traffic
