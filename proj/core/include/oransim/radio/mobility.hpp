#pragma once

#include <string>
#include <vector>

#include "oransim/radio/types.hpp"
#include "oransim/sim/time.hpp"

namespace oransim::radio {

/// Piecewise-linear route. Positions are addressed by distance along the
/// polyline; past the end the position pins to the last waypoint.
class Route {
 public:
  explicit Route(std::vector<Point> waypoints);

  Point at_offset(double offset_m) const;
  double length_m() const { return total_length_; }

 private:
  std::vector<Point> waypoints_;
  std::vector<double> cumulative_;  // distance at each waypoint
  double total_length_ = 0.0;
};

/// Advances a vehicle along its route by speed * dt, stopping at the end.
VehicleState step_mobility(const VehicleState& state, const Route& route,
                           double speed_mps, sim::SimTime dt);

/// One UE's mobility trace sample.
struct TracePoint {
  sim::SimTime t;
  Point position;
};

/// Parses a mobility trace CSV with header t_ms,ue_id,x_m,y_m and returns the
/// samples for `ue`, sorted by time. Throws DataError on malformed input.
std::vector<TracePoint> load_mobility_trace(const std::string& path, UeId ue);

/// Position source shared by route- and trace-driven vehicles.
class MobilityModel {
 public:
  /// Route-driven: constant speed along the polyline.
  MobilityModel(Route route, double speed_mps);
  /// Trace-driven: linear interpolation between samples.
  explicit MobilityModel(std::vector<TracePoint> trace);

  Point position_at(sim::SimTime t) const;
  /// Distance travelled between consecutive report instants; used to advance
  /// the shadowing fields.
  double offset_at(sim::SimTime t) const;

 private:
  Route route_{{}};
  double speed_mps_ = 0.0;
  std::vector<TracePoint> trace_;
  bool trace_driven_ = false;
};

}  // namespace oransim::radio
