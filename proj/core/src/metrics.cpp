#include "oransim/traffic/metrics.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdio>

#include "oransim/errors.hpp"

namespace oransim::traffic {
namespace {

std::int64_t bin_of(sim::SimTime t) {
  assert(t.ms > 0);
  return (t.ms - 1) / 1000;
}

void append_rows(std::string& out, const char* metric,
                 std::vector<std::array<double, 3>> rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) {
                     if (a[0] != b[0]) return a[0] < b[0];
                     return a[1] < b[1];
                   });
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%lld,%u,%s,%.10g\n",
                  static_cast<long long>(r[0]),
                  static_cast<unsigned>(r[1]), metric, r[2]);
    out += buf;
  }
}

}  // namespace

void MetricsCollector::register_ue(radio::UeId ue) { ues_.insert(ue); }

void MetricsCollector::record_cqi(sim::SimTime t, radio::UeId ue, int cqi) {
  ues_.insert(ue);
  cqi_.push_back(Row{t.ms, ue, static_cast<double>(cqi)});
}

void MetricsCollector::record_delay(sim::SimTime t, radio::UeId ue,
                                    double delay_ms) {
  ues_.insert(ue);
  delay_.push_back(Row{t.ms, ue, delay_ms});
}

void MetricsCollector::record_delivery(sim::SimTime t, radio::UeId ue,
                                       std::int64_t bytes) {
  ues_.insert(ue);
  goodput_bits_[{ue, bin_of(t)}] += bytes * 8;
  delivered_bytes_ += bytes;
}

void MetricsCollector::record_freeze(sim::SimTime t, radio::UeId ue,
                                     std::int64_t duration_ms) {
  ues_.insert(ue);
  freeze_.push_back(Row{t.ms, ue, static_cast<double>(duration_ms)});
}

void MetricsCollector::set_ota_completion(sim::SimTime t) {
  ota_completion_ms_ = t.ms;
}

RunMetrics MetricsCollector::aggregate(sim::SimTime duration) const {
  if (duration.ms <= 0) throw ConfigError("duration must be positive");
  RunMetrics m;
  m.cqi_samples = cqi_.size();
  m.delay_samples = delay_.size();
  m.delivered_bytes = delivered_bytes_;
  double cqi_sum = 0.0;
  for (const auto& r : cqi_) cqi_sum += r.value;
  m.mean_cqi = cqi_.empty() ? 0.0 : cqi_sum / static_cast<double>(cqi_.size());
  double delay_sum = 0.0;
  for (const auto& r : delay_) delay_sum += r.value;
  m.mean_delay_ms =
      delay_.empty() ? 0.0 : delay_sum / static_cast<double>(delay_.size());
  m.mean_throughput_bps =
      static_cast<double>(delivered_bytes_) * 8.0 / duration.seconds();
  m.freeze_count = freeze_.size();
  for (const auto& r : freeze_) {
    m.freeze_total_ms += static_cast<std::int64_t>(r.value);
  }
  m.ota_completion_ms = ota_completion_ms_;
  return m;
}

std::string MetricsCollector::to_csv(sim::SimTime duration) const {
  if (duration.ms <= 0) throw ConfigError("duration must be positive");
  std::string out = "t_ms,ue_id,metric,value\n";
  auto plain = [](const std::vector<Row>& rows) {
    std::vector<std::array<double, 3>> v;
    v.reserve(rows.size());
    for (const auto& r : rows) {
      v.push_back({static_cast<double>(r.t_ms), static_cast<double>(r.ue),
                   r.value});
    }
    return v;
  };
  append_rows(out, "cqi", plain(cqi_));
  append_rows(out, "delay_ms", plain(delay_));

  const std::int64_t bins = duration.ms / 1000;
  std::vector<std::array<double, 3>> goodput;
  for (radio::UeId ue : ues_) {
    for (std::int64_t b = 0; b < bins; ++b) {
      const auto it = goodput_bits_.find({ue, b});
      const std::int64_t bits = it == goodput_bits_.end() ? 0 : it->second;
      goodput.push_back({static_cast<double>(b * 1000),
                         static_cast<double>(ue),
                         static_cast<double>(bits)});
    }
  }
  append_rows(out, "goodput_bps", std::move(goodput));
  append_rows(out, "freeze_ms", plain(freeze_));
  return out;
}

}  // namespace oransim::traffic
