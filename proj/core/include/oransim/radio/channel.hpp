#pragma once

#include <vector>

#include "oransim/radio/types.hpp"
#include "oransim/sim/rng.hpp"

namespace oransim::radio {

/// Urban-macro LOS path loss: PL = 28.0 + 22*log10(d) + 20*log10(f),
/// d in metres (clamped to >= 1), f in GHz.
double path_loss_db(double distance_m, double carrier_ghz);

/// Thermal noise floor over the given bandwidth: -174 dBm/Hz + 10*log10(BW)
/// plus the receiver noise figure.
double noise_floor_dbm(double bandwidth_mhz, double noise_figure_db = 7.0);

/// rsrp = tx_power - path_loss - shadowing
double rsrp_dbm(const CellConfig& cell, Point ue_pos, double shadowing_db);

/// Serving-cell SINR against full-buffer interference from every other cell
/// plus thermal noise. `rsrps` holds (cell, rsrp dBm) for all cells.
double sinr_db(const std::vector<std::pair<CellId, double>>& rsrps,
               CellId serving, double noise_dbm);

/// Maps SINR to CQI 0..15 by counting thresholds <= sinr.
int cqi_from_sinr(double sinr_db);

/// Log-normal shadowing with exponential spatial correlation (Gudmundson):
/// an AR(1) process over distance travelled, one independent field per
/// (UE, cell) pair via the stream label.
class ShadowingField {
 public:
  ShadowingField(sim::RngStream rng, double sigma_db, double decorrelation_m);

  /// Value after the UE has moved `delta_m` metres since the last call.
  /// The first call draws the stationary distribution.
  double advance(double delta_m);

  double sigma_db() const { return sigma_db_; }

 private:
  sim::RngStream rng_;
  double sigma_db_;
  double decorrelation_m_;
  double value_db_ = 0.0;
  bool initialized_ = false;
};

}  // namespace oransim::radio
