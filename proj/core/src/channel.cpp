#include "oransim/radio/channel.hpp"

#include <algorithm>
#include <cmath>

namespace oransim::radio {

namespace {
// SINR switching points for CQI 1..15, dB.
constexpr double kCqiThresholdsDb[] = {-6.7, -4.7, -2.3, 0.2,  2.4,
                                       4.3,  5.9,  8.1,  10.3, 11.7,
                                       14.1, 16.3, 18.7, 21.0, 22.7};

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double mw_to_db(double mw) { return 10.0 * std::log10(mw); }
}  // namespace

double path_loss_db(double distance_m, double carrier_ghz) {
  const double d = std::max(distance_m, 1.0);
  return 28.0 + 22.0 * std::log10(d) + 20.0 * std::log10(carrier_ghz);
}

double noise_floor_dbm(double bandwidth_mhz, double noise_figure_db) {
  return -174.0 + 10.0 * std::log10(bandwidth_mhz * 1e6) + noise_figure_db;
}

double rsrp_dbm(const CellConfig& cell, Point ue_pos, double shadowing_db) {
  const double d = distance(cell.position, ue_pos);
  return cell.tx_power_dbm - path_loss_db(d, cell.carrier_ghz) - shadowing_db;
}

double sinr_db(const std::vector<std::pair<CellId, double>>& rsrps,
               CellId serving, double noise_dbm) {
  double signal_mw = 0.0;
  double interference_mw = dbm_to_mw(noise_dbm);
  for (const auto& [cell, rsrp] : rsrps) {
    if (cell == serving) {
      signal_mw = dbm_to_mw(rsrp);
    } else {
      interference_mw += dbm_to_mw(rsrp);
    }
  }
  return mw_to_db(signal_mw / interference_mw);
}

int cqi_from_sinr(double sinr_db) {
  int cqi = 0;
  for (double threshold : kCqiThresholdsDb) {
    if (sinr_db >= threshold) ++cqi;
  }
  return cqi;
}

ShadowingField::ShadowingField(sim::RngStream rng, double sigma_db,
                               double decorrelation_m)
    : rng_(rng), sigma_db_(sigma_db), decorrelation_m_(decorrelation_m) {}

double ShadowingField::advance(double delta_m) {
  if (!initialized_) {
    value_db_ = rng_.normal(0.0, sigma_db_);
    initialized_ = true;
    return value_db_;
  }
  const double a = std::exp(-std::abs(delta_m) / decorrelation_m_);
  value_db_ = a * value_db_ +
              std::sqrt(1.0 - a * a) * rng_.normal(0.0, sigma_db_);
  return value_db_;
}

}  // namespace oransim::radio
