#pragma once

#include <cstdint>
#include <string>

#include "oransim/sim/scenario.hpp"
#include "oransim/traffic/metrics.hpp"
#include "oransim/xapps/handover.hpp"

namespace oransim::sim {

struct RunConfig {
  RunMode mode = RunMode::default_a3;
  std::uint64_t seed = 1;
  std::string model_path;  // required for gru / lstm modes
};

struct E2Stats {
  std::uint64_t indications = 0;
  std::uint64_t indications_dropped = 0;
  std::uint64_t unrouted = 0;
  std::uint64_t controls_sent = 0;
  std::uint64_t controls_acked = 0;
  std::uint64_t control_failures = 0;
  std::uint64_t protocol_errors = 0;
};

struct RunResult {
  traffic::RunMetrics metrics;
  std::uint64_t handovers = 0;
  E2Stats e2;
  xapps::DecisionLog decisions;
  std::string metrics_csv;
  std::string decisions_csv;
  std::string sdl_csv;
  std::string aggregates_json;
};

/// Executes one seeded run end to end. Deterministic: identical
/// (scenario, config) pairs produce byte-identical artifact strings.
RunResult run_scenario(const Scenario& scenario, const RunConfig& config);

}  // namespace oransim::sim
