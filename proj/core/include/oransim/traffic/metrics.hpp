#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oransim/radio/types.hpp"
#include "oransim/sim/time.hpp"

namespace oransim::traffic {

struct RunMetrics {
  double mean_cqi = 0.0;
  double mean_delay_ms = 0.0;
  double mean_throughput_bps = 0.0;  // delivered bits over the whole run
  std::uint64_t freeze_count = 0;
  std::int64_t freeze_total_ms = 0;
  std::optional<std::int64_t> ota_completion_ms;
  std::uint64_t cqi_samples = 0;
  std::uint64_t delay_samples = 0;
  std::int64_t delivered_bytes = 0;
};

/// Per-run KPI sink. Goodput is binned into one-second intervals
/// (k*1000, (k+1)*1000]; empty bins emit zero rows so rates average
/// correctly over the full run.
class MetricsCollector {
 public:
  void register_ue(radio::UeId ue);

  void record_cqi(sim::SimTime t, radio::UeId ue, int cqi);
  void record_delay(sim::SimTime t, radio::UeId ue, double delay_ms);
  void record_delivery(sim::SimTime t, radio::UeId ue, std::int64_t bytes);
  void record_freeze(sim::SimTime t, radio::UeId ue, std::int64_t duration_ms);
  void set_ota_completion(sim::SimTime t);

  RunMetrics aggregate(sim::SimTime duration) const;
  /// Long format: t_ms,ue_id,metric,value with sections cqi, delay_ms,
  /// goodput_bps, freeze_ms, each ordered by (t, ue).
  std::string to_csv(sim::SimTime duration) const;

 private:
  struct Row {
    std::int64_t t_ms;
    radio::UeId ue;
    double value;
  };

  std::set<radio::UeId> ues_;
  std::vector<Row> cqi_;
  std::vector<Row> delay_;
  std::vector<Row> freeze_;
  std::map<std::pair<radio::UeId, std::int64_t>, std::int64_t> goodput_bits_;
  std::optional<std::int64_t> ota_completion_ms_;
  std::int64_t delivered_bytes_ = 0;
};

}  // namespace oransim::traffic
