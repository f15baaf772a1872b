#include "oransim/radio/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "oransim/errors.hpp"

namespace oransim::radio {

Route::Route(std::vector<Point> waypoints) : waypoints_(std::move(waypoints)) {
  cumulative_.reserve(waypoints_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < waypoints_.size(); ++i) {
    if (i > 0) acc += distance(waypoints_[i - 1], waypoints_[i]);
    cumulative_.push_back(acc);
  }
  total_length_ = acc;
}

Point Route::at_offset(double offset_m) const {
  if (waypoints_.empty()) return {};
  if (offset_m <= 0.0) return waypoints_.front();
  if (offset_m >= total_length_) return waypoints_.back();
  const auto it =
      std::upper_bound(cumulative_.begin(), cumulative_.end(), offset_m);
  const std::size_t seg = static_cast<std::size_t>(it - cumulative_.begin());
  const Point& a = waypoints_[seg - 1];
  const Point& b = waypoints_[seg];
  const double seg_len = cumulative_[seg] - cumulative_[seg - 1];
  const double frac = seg_len > 0.0 ? (offset_m - cumulative_[seg - 1]) / seg_len : 0.0;
  return {a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y)};
}

VehicleState step_mobility(const VehicleState& state, const Route& route,
                           double speed_mps, sim::SimTime dt) {
  VehicleState next = state;
  next.route_offset_m =
      std::min(state.route_offset_m + speed_mps * dt.seconds(), route.length_m());
  next.position = route.at_offset(next.route_offset_m);
  return next;
}

std::vector<TracePoint> load_mobility_trace(const std::string& path, UeId ue) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open mobility trace: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t_ms,ue_id,x_m,y_m", 0) != 0) {
    throw DataError("mobility trace missing t_ms,ue_id,x_m,y_m header: " + path);
  }
  std::vector<TracePoint> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    double vals[4];
    for (int i = 0; i < 4; ++i) {
      if (!std::getline(row, field, ',')) {
        throw DataError("mobility trace " + path + " line " +
                        std::to_string(lineno) + ": expected 4 columns");
      }
      try {
        vals[i] = std::stod(field);
      } catch (const std::exception&) {
        throw DataError("mobility trace " + path + " line " +
                        std::to_string(lineno) + ": bad number '" + field + "'");
      }
    }
    if (static_cast<UeId>(vals[1]) != ue) continue;
    out.push_back({sim::millis(static_cast<std::int64_t>(vals[0])),
                   Point{vals[2], vals[3]}});
  }
  std::sort(out.begin(), out.end(),
            [](const TracePoint& a, const TracePoint& b) { return a.t < b.t; });
  return out;
}

MobilityModel::MobilityModel(Route route, double speed_mps)
    : route_(std::move(route)), speed_mps_(speed_mps) {}

MobilityModel::MobilityModel(std::vector<TracePoint> trace)
    : trace_(std::move(trace)), trace_driven_(true) {
  if (trace_.empty()) throw DataError("empty mobility trace");
}

Point MobilityModel::position_at(sim::SimTime t) const {
  if (!trace_driven_) {
    return route_.at_offset(speed_mps_ * t.seconds());
  }
  if (t <= trace_.front().t) return trace_.front().position;
  if (t >= trace_.back().t) return trace_.back().position;
  const auto it = std::upper_bound(
      trace_.begin(), trace_.end(), t,
      [](sim::SimTime lhs, const TracePoint& p) { return lhs < p.t; });
  const TracePoint& b = *it;
  const TracePoint& a = *(it - 1);
  const double span = static_cast<double>((b.t - a.t).ms);
  const double frac = span > 0.0 ? static_cast<double>((t - a.t).ms) / span : 0.0;
  return {a.position.x + frac * (b.position.x - a.position.x),
          a.position.y + frac * (b.position.y - a.position.y)};
}

double MobilityModel::offset_at(sim::SimTime t) const {
  if (!trace_driven_) {
    return std::min(speed_mps_ * t.seconds(), route_.length_m());
  }
  double acc = 0.0;
  Point prev = trace_.front().position;
  for (std::size_t i = 1; i < trace_.size() && trace_[i].t <= t; ++i) {
    acc += distance(prev, trace_[i].position);
    prev = trace_[i].position;
  }
  acc += distance(prev, position_at(t));
  return acc;
}

}  // namespace oransim::radio
