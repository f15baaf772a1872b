#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oransim/radio/channel.hpp"
#include "oransim/radio/mobility.hpp"
#include "oransim/radio/types.hpp"

namespace oransim::radio {

struct RadioParams {
  double shadowing_sigma_db = 4.0;
  double decorrelation_m = 50.0;
  double noise_figure_db = 7.0;
  bool shadowing_enabled = true;
  /// Reported RSRP is smoothed with a first-order filter, weight a = 2^(-k/4)
  /// on the newest sample. k = 0 disables smoothing.
  double filter_k = 8.0;
};

/// Builds a report from per-cell RSRP values: entries sorted by cell id, SINR
/// for the serving cell against all others plus noise, CQI from SINR.
MeasurementReport make_report(UeId ue, sim::SimTime t, CellId serving,
                              std::vector<std::pair<CellId, double>> entries,
                              double noise_dbm);

/// Per-UE radio environment sampled on the report grid t = 0, T, 2T, ...
/// Mobility and shadowing are deterministic functions of the scenario seed,
/// so the whole trace is precomputed at run start; per-cell RSRP does not
/// depend on handover decisions, which keeps the rows valid for any serving
/// sequence and gives the scripted-future predictor something exact to read.
class RadioTrace {
 public:
  RadioTrace(const std::vector<CellConfig>& cells, const MobilityModel& mobility,
             UeId ue, std::uint64_t seed, const RadioParams& params,
             sim::SimTime report_period, sim::SimTime duration);

  std::size_t rows() const { return rsrp_.size(); }
  sim::SimTime period() const { return period_; }
  sim::SimTime time_of_row(std::size_t k) const;
  /// Row index of the report instant at or before t.
  std::size_t row_at(sim::SimTime t) const;

  const std::vector<CellConfig>& cells() const { return cells_; }
  std::optional<std::size_t> cell_index(CellId id) const;

  /// Instantaneous channel RSRP; drives link capacity.
  double rsrp(std::size_t row, std::size_t cell_idx) const {
    return rsrp_[row][cell_idx];
  }
  /// Smoothed RSRP as carried in measurement reports; drives handover logic.
  double rsrp_meas(std::size_t row, std::size_t cell_idx) const {
    return meas_[row][cell_idx];
  }
  /// Future lookup used by the scripted-future predictor; clamps to the last
  /// row when the horizon extends past the run.
  double rsrp_meas_clamped(std::size_t row, std::size_t cell_idx) const;

  CellId strongest_cell(std::size_t row) const;
  double noise_dbm() const { return noise_dbm_; }

  /// CQI of the serving cell from the instantaneous channel.
  int link_cqi(std::size_t row, CellId serving) const;

  MeasurementReport report_at(std::size_t row, CellId serving, UeId ue) const;

 private:
  std::vector<CellConfig> cells_;  // sorted by id
  std::vector<std::vector<double>> rsrp_;  // [row][cell_idx]
  std::vector<std::vector<double>> meas_;  // smoothed, same shape
  sim::SimTime period_;
  double noise_dbm_ = 0.0;
};

}  // namespace oransim::radio
