#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oransim/radio/measurement.hpp"
#include "oransim/sim/time.hpp"

namespace oransim::ric {

/// Shared data layer: per-(ue, cell) RSRP time series plus the latest full
/// report per UE. Series are bounded rings; timestamps strictly increase.
class SdlStore {
 public:
  struct Sample {
    sim::SimTime t;
    double rsrp_dbm;
    bool operator==(const Sample&) const = default;
  };

  explicit SdlStore(std::size_t capacity = 256);

  std::size_t capacity() const { return capacity_; }

  /// Appends one sample. Returns false (and stores nothing) unless t is
  /// strictly greater than the last stored t for the series.
  bool put(radio::UeId ue, radio::CellId cell, sim::SimTime t, double rsrp_dbm);

  /// Last min(n, stored) samples, ascending t. Unknown series -> empty.
  std::vector<Sample> window(radio::UeId ue, radio::CellId cell,
                             std::size_t n) const;

  /// Samples with t >= from, ascending.
  std::vector<Sample> range_from(radio::UeId ue, radio::CellId cell,
                                 sim::SimTime from) const;

  std::size_t size(radio::UeId ue, radio::CellId cell) const;

  void set_latest(const radio::MeasurementReport& report);
  const radio::MeasurementReport* latest(radio::UeId ue) const;

  /// Full contents as CSV `ue_id,cell_id,t_ms,rsrp_dbm`, ordered by
  /// (ue, cell, t).
  std::string dump_csv() const;

 private:
  using SeriesKey = std::pair<radio::UeId, radio::CellId>;

  std::map<SeriesKey, std::deque<Sample>> series_;
  std::map<radio::UeId, radio::MeasurementReport> latest_;
  std::size_t capacity_;
};

}  // namespace oransim::ric
