#pragma once

#include <cstdint>
#include <optional>

#include "oransim/radio/types.hpp"

namespace oransim::xapps {

struct HoPolicy {
  double hom_db = 3.0;
  std::uint32_t check_period_ms = 1000;
  std::uint32_t pingpong_guard_ms = 2000;
  std::uint32_t horizon_n = 10;
  std::uint32_t prediction_step_ms = 1000;
};

struct PredictionRequest {
  radio::CellId serving = 0;
  radio::CellId target = 0;
};

/// Result of the N-step forecast scan. Steps are 1-based; inversion_step is
/// the first step where the target's predicted RSRP exceeds the serving
/// cell's, a3_step the first where it does so by more than the hysteresis
/// margin. decision == handover iff a3_step is present, and then
/// ttt_ms = inversion_step * prediction_step_ms.
struct PredictionOutcome {
  enum class Decision { no_handover, handover };

  Decision decision = Decision::no_handover;
  radio::CellId target = 0;
  std::uint32_t ttt_ms = 0;
  std::optional<std::uint32_t> inversion_step;
  std::optional<std::uint32_t> a3_step;
  bool insufficient_history = false;
  bool model_error = false;
};

}  // namespace oransim::xapps
