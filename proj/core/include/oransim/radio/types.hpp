#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "oransim/sim/time.hpp"

namespace oransim::radio {

using CellId = std::uint32_t;
using UeId = std::uint32_t;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Point a, Point b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct CellConfig {
  CellId id = 0;
  Point position;
  double tx_power_dbm = 46.0;
  double carrier_ghz = 3.5;   // n78
  double bandwidth_mhz = 100.0;
};

struct VehicleConfig {
  UeId id = 0;
  std::vector<Point> route;   // polyline waypoints, metres
  double speed_mps = 15.0;
  std::string trace_csv;      // optional: mobility trace instead of route
};

struct VehicleState {
  UeId id = 0;
  Point position;
  double route_offset_m = 0.0;  // distance travelled along the route
  CellId serving_cell = 0;
};

/// Per-UE KPM payload: one RSRP entry per cell, sorted by cell id, plus the
/// serving cell's SINR and the CQI derived from it.
struct MeasurementReport {
  UeId ue = 0;
  sim::SimTime t;
  CellId serving = 0;
  std::vector<std::pair<CellId, double>> entries;  // (cell, rsrp dBm)
  double sinr_db = 0.0;
  int cqi = 0;

  bool operator==(const MeasurementReport&) const = default;

  double rsrp_of(CellId cell) const;
};

}  // namespace oransim::radio
