#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oransim/radio/measurement.hpp"
#include "oransim/radio/types.hpp"
#include "oransim/sim/time.hpp"
#include "oransim/traffic/apps.hpp"
#include "oransim/xapps/policy.hpp"

namespace oransim::sim {

/// Handover decision path for a run. "default" is the conventional RAN-side
/// A3 trigger; the other three route decisions through the RIC with the
/// named predictor backend.
enum class RunMode { default_a3, gru, lstm, oracle };

const char* mode_name(RunMode mode);
RunMode mode_from_name(const std::string& name);  // throws ConfigError

struct UeSpec {
  radio::VehicleConfig vehicle;
  bool streaming = false;
  bool ota = false;
};

struct Scenario {
  std::string name = "default";
  SimTime duration{200'000};
  SimTime report_period{1000};
  std::vector<radio::CellConfig> cells;
  std::vector<UeSpec> ues;
  radio::RadioParams radio;
  xapps::HoPolicy policy;
  std::size_t sdl_capacity = 256;
  traffic::StreamConfig streaming;
  traffic::OtaConfig ota;
};

/// Three-site 3 km roadside deployment, one streaming vehicle at 15 m/s.
Scenario default_scenario();

/// Throws ConfigError on schema violations (including unknown keys) and
/// DataError when the file cannot be read.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& json_text,
                        const std::string& origin);

void validate_scenario(const Scenario& scenario);

/// Trace-driven when the vehicle carries a trace path, else route-driven.
radio::MobilityModel make_mobility(const radio::VehicleConfig& vehicle);

}  // namespace oransim::sim
