#include "oransim/sim/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "oransim/errors.hpp"

namespace oransim::sim {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& context) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError(context + ": unknown key \"" + key + "\"");
    }
  }
}

double num(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    throw ConfigError(std::string(key) + " must be a number");
  }
  return obj[key].get<double>();
}

std::int64_t integer(const json& obj, const char* key, std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) {
    throw ConfigError(std::string(key) + " must be an integer");
  }
  return obj[key].get<std::int64_t>();
}

std::vector<radio::Point> parse_route(const json& arr) {
  if (!arr.is_array()) throw ConfigError("route must be an array of [x, y]");
  std::vector<radio::Point> points;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() ||
        !p[1].is_number()) {
      throw ConfigError("route waypoints must be [x, y] number pairs");
    }
    points.push_back(radio::Point{p[0].get<double>(), p[1].get<double>()});
  }
  return points;
}

}  // namespace

const char* mode_name(RunMode mode) {
  switch (mode) {
    case RunMode::default_a3: return "default";
    case RunMode::gru: return "gru";
    case RunMode::lstm: return "lstm";
    case RunMode::oracle: return "oracle";
  }
  return "default";
}

RunMode mode_from_name(const std::string& name) {
  if (name == "default") return RunMode::default_a3;
  if (name == "gru") return RunMode::gru;
  if (name == "lstm") return RunMode::lstm;
  if (name == "oracle") return RunMode::oracle;
  throw ConfigError("unknown mode \"" + name +
                    "\" (expected default, gru, lstm or oracle)");
}

Scenario default_scenario() {
  Scenario sc;
  sc.name = "default";
  sc.cells = {
      radio::CellConfig{1, {500.0, 35.0}},
      radio::CellConfig{2, {1500.0, 35.0}},
      radio::CellConfig{3, {2500.0, 35.0}},
  };
  UeSpec ue;
  ue.vehicle.id = 1;
  ue.vehicle.route = {{0.0, 0.0}, {3000.0, 0.0}};
  ue.vehicle.speed_mps = 15.0;
  ue.streaming = true;
  sc.ues.push_back(std::move(ue));
  return sc;
}

Scenario parse_scenario(const std::string& json_text,
                        const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError(origin + ": top level must be an object");
  check_keys(root,
             {"name", "duration_s", "report_period_ms", "cells", "ues",
              "radio", "policy", "sdl_capacity", "traffic"},
             origin);

  Scenario sc;
  if (root.contains("name")) {
    if (!root["name"].is_string()) throw ConfigError("name must be a string");
    sc.name = root["name"].get<std::string>();
  }
  const double duration_s = num(root, "duration_s", 200.0);
  sc.duration = SimTime{static_cast<std::int64_t>(duration_s * 1000.0 + 0.5)};
  sc.report_period = SimTime{integer(root, "report_period_ms", 1000)};

  if (!root.contains("cells") || !root["cells"].is_array()) {
    throw ConfigError(origin + ": cells array is required");
  }
  for (const auto& c : root["cells"]) {
    check_keys(c, {"id", "x_m", "y_m", "tx_power_dbm", "carrier_ghz",
                   "bandwidth_mhz"},
               "cell");
    radio::CellConfig cell;
    cell.id = static_cast<radio::CellId>(integer(c, "id", 0));
    cell.position = {num(c, "x_m", 0.0), num(c, "y_m", 0.0)};
    cell.tx_power_dbm = num(c, "tx_power_dbm", cell.tx_power_dbm);
    cell.carrier_ghz = num(c, "carrier_ghz", cell.carrier_ghz);
    cell.bandwidth_mhz = num(c, "bandwidth_mhz", cell.bandwidth_mhz);
    sc.cells.push_back(cell);
  }

  if (!root.contains("ues") || !root["ues"].is_array()) {
    throw ConfigError(origin + ": ues array is required");
  }
  for (const auto& u : root["ues"]) {
    check_keys(u, {"id", "route", "speed_mps", "trace_csv", "apps"}, "ue");
    UeSpec spec;
    spec.vehicle.id = static_cast<radio::UeId>(integer(u, "id", 0));
    if (u.contains("route")) spec.vehicle.route = parse_route(u["route"]);
    spec.vehicle.speed_mps = num(u, "speed_mps", spec.vehicle.speed_mps);
    if (u.contains("trace_csv")) {
      if (!u["trace_csv"].is_string()) {
        throw ConfigError("trace_csv must be a string");
      }
      spec.vehicle.trace_csv = u["trace_csv"].get<std::string>();
    }
    if (u.contains("apps")) {
      if (!u["apps"].is_array()) throw ConfigError("apps must be an array");
      for (const auto& a : u["apps"]) {
        if (!a.is_string()) throw ConfigError("apps entries must be strings");
        const std::string name = a.get<std::string>();
        if (name == "streaming") {
          spec.streaming = true;
        } else if (name == "ota") {
          spec.ota = true;
        } else {
          throw ConfigError("unknown app \"" + name +
                            "\" (expected streaming or ota)");
        }
      }
    }
    sc.ues.push_back(std::move(spec));
  }

  if (root.contains("radio")) {
    const auto& r = root["radio"];
    check_keys(r,
               {"shadowing_sigma_db", "decorrelation_m", "noise_figure_db",
                "shadowing", "filter_k"},
               "radio");
    sc.radio.shadowing_sigma_db =
        num(r, "shadowing_sigma_db", sc.radio.shadowing_sigma_db);
    sc.radio.decorrelation_m = num(r, "decorrelation_m", sc.radio.decorrelation_m);
    sc.radio.noise_figure_db = num(r, "noise_figure_db", sc.radio.noise_figure_db);
    sc.radio.filter_k = num(r, "filter_k", sc.radio.filter_k);
    if (r.contains("shadowing")) {
      if (!r["shadowing"].is_boolean()) {
        throw ConfigError("shadowing must be a boolean");
      }
      sc.radio.shadowing_enabled = r["shadowing"].get<bool>();
    }
  }

  if (root.contains("policy")) {
    const auto& p = root["policy"];
    check_keys(p,
               {"hom_db", "check_period_ms", "pingpong_guard_ms", "horizon_n",
                "prediction_step_ms"},
               "policy");
    sc.policy.hom_db = num(p, "hom_db", sc.policy.hom_db);
    sc.policy.check_period_ms = static_cast<std::uint32_t>(
        integer(p, "check_period_ms", sc.policy.check_period_ms));
    sc.policy.pingpong_guard_ms = static_cast<std::uint32_t>(
        integer(p, "pingpong_guard_ms", sc.policy.pingpong_guard_ms));
    sc.policy.horizon_n = static_cast<std::uint32_t>(
        integer(p, "horizon_n", sc.policy.horizon_n));
    sc.policy.prediction_step_ms = static_cast<std::uint32_t>(
        integer(p, "prediction_step_ms", sc.policy.prediction_step_ms));
  }

  sc.sdl_capacity = static_cast<std::size_t>(
      integer(root, "sdl_capacity", static_cast<std::int64_t>(sc.sdl_capacity)));

  if (root.contains("traffic")) {
    const auto& t = root["traffic"];
    check_keys(t, {"streaming", "ota"}, "traffic");
    if (t.contains("streaming")) {
      const auto& s = t["streaming"];
      check_keys(s,
                 {"frame_period_ms", "mean_frame_bytes", "lognormal_sigma",
                  "prebuffer_frames"},
                 "traffic.streaming");
      sc.streaming.frame_period_ms = static_cast<std::uint32_t>(
          integer(s, "frame_period_ms", sc.streaming.frame_period_ms));
      sc.streaming.mean_frame_bytes =
          num(s, "mean_frame_bytes", sc.streaming.mean_frame_bytes);
      sc.streaming.lognormal_sigma =
          num(s, "lognormal_sigma", sc.streaming.lognormal_sigma);
      sc.streaming.prebuffer_frames = static_cast<int>(
          integer(s, "prebuffer_frames", sc.streaming.prebuffer_frames));
    }
    if (t.contains("ota")) {
      const auto& o = t["ota"];
      check_keys(o, {"total_bytes", "packet_bytes", "interval_ms"},
                 "traffic.ota");
      sc.ota.total_bytes = integer(o, "total_bytes", sc.ota.total_bytes);
      sc.ota.packet_bytes = integer(o, "packet_bytes", sc.ota.packet_bytes);
      sc.ota.interval_ms = static_cast<std::uint32_t>(
          integer(o, "interval_ms", sc.ota.interval_ms));
    }
  }

  validate_scenario(sc);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

radio::MobilityModel make_mobility(const radio::VehicleConfig& vehicle) {
  if (!vehicle.trace_csv.empty()) {
    return radio::MobilityModel(
        radio::load_mobility_trace(vehicle.trace_csv, vehicle.id));
  }
  return radio::MobilityModel(radio::Route(vehicle.route), vehicle.speed_mps);
}

void validate_scenario(const Scenario& sc) {
  if (sc.duration.ms <= 0) throw ConfigError("duration_s must be positive");
  if (sc.report_period.ms <= 0) {
    throw ConfigError("report_period_ms must be positive");
  }
  if (sc.duration.ms % sc.report_period.ms != 0) {
    throw ConfigError("duration must be a multiple of report_period_ms");
  }
  if (sc.cells.empty()) throw ConfigError("at least one cell is required");
  std::set<radio::CellId> cell_ids;
  for (const auto& c : sc.cells) {
    if (!cell_ids.insert(c.id).second) {
      throw ConfigError("duplicate cell id " + std::to_string(c.id));
    }
    if (c.bandwidth_mhz <= 0.0) throw ConfigError("bandwidth_mhz must be positive");
    if (c.carrier_ghz <= 0.0) throw ConfigError("carrier_ghz must be positive");
  }
  if (sc.ues.empty()) throw ConfigError("at least one ue is required");
  std::set<radio::UeId> ue_ids;
  int ota_ues = 0;
  for (const auto& u : sc.ues) {
    if (!ue_ids.insert(u.vehicle.id).second) {
      throw ConfigError("duplicate ue id " + std::to_string(u.vehicle.id));
    }
    if (u.vehicle.trace_csv.empty()) {
      if (u.vehicle.route.size() < 2) {
        throw ConfigError("ue " + std::to_string(u.vehicle.id) +
                          ": route needs at least two waypoints");
      }
      if (u.vehicle.speed_mps < 0.0) {
        throw ConfigError("speed_mps must be non-negative");
      }
    }
    if (u.ota) ++ota_ues;
  }
  if (ota_ues > 1) {
    throw ConfigError("at most one ue may run the ota app");
  }
  if (sc.policy.horizon_n == 0) throw ConfigError("horizon_n must be positive");
  if (sc.policy.check_period_ms == 0) {
    throw ConfigError("check_period_ms must be positive");
  }
  if (sc.policy.prediction_step_ms == 0) {
    throw ConfigError("prediction_step_ms must be positive");
  }
  if (sc.radio.filter_k < 0.0) {
    throw ConfigError("filter_k must be non-negative");
  }
  if (sc.sdl_capacity == 0) throw ConfigError("sdl_capacity must be positive");
  if (sc.ota.total_bytes <= 0 || sc.ota.packet_bytes <= 0 ||
      sc.ota.interval_ms == 0) {
    throw ConfigError("ota traffic parameters must be positive");
  }
}

}  // namespace oransim::sim
