#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oransim/e2/message.hpp"
#include "oransim/radio/types.hpp"
#include "oransim/ric/sdl.hpp"
#include "oransim/sim/event_queue.hpp"
#include "oransim/xapps/policy.hpp"
#include "oransim/xapps/predictor.hpp"

namespace oransim::xapps {

/// Strongest non-serving entry, lowest cell id on ties.
std::optional<radio::CellId> strongest_neighbor(
    const radio::MeasurementReport& report);

/// Pre-trigger check: returns a prediction request for the strongest
/// neighbor iff RSRP_tgt + HOM > RSRP_serv and the ping-pong guard has
/// expired. allowed_after is the guard expiry instant for this UE
/// (execution + guard; commands in flight keep it in the future), nullopt
/// before the first handover.
std::optional<PredictionRequest> ho_check(
    radio::UeId ue, const HoPolicy& policy, const ric::SdlStore& sdl,
    sim::SimTime now, std::optional<sim::SimTime> allowed_after);

/// Forecasts both series policy.horizon_n steps out and scans for the
/// inversion and A3 steps. Missing history or a failing model yields
/// no_handover with the matching flag set.
PredictionOutcome qp_predict(radio::UeId ue, radio::CellId serving,
                             radio::CellId target, const HoPolicy& policy,
                             Predictor& model, const ric::SdlStore& sdl);

/// Conventional trigger, RAN-side: strongest neighbor wins as soon as
/// RSRP_tgt - HOM > RSRP_serv (strict), no prediction, TTT = 0.
std::optional<radio::CellId> baseline_ho_check(
    const radio::MeasurementReport& latest, double hom_db);

struct UeRanState {
  radio::CellId serving = 0;
  std::optional<sim::SimTime> guard_until;
  bool command_pending = false;
};

/// RAN-side executor: commits a handover command by scheduling the serving
/// switch at now + ttt. At execution the serving cell changes, the
/// ping-pong guard starts, and the switch hook fires (interruption and
/// re-homing hang off it). Unknown UEs and UEs with a command already in
/// flight are refused.
class HandoverExecutor {
 public:
  using SwitchHook = std::function<void(radio::UeId, radio::CellId from,
                                        radio::CellId to, sim::SimTime)>;

  HandoverExecutor(sim::EventQueue& queue, std::uint32_t pingpong_guard_ms)
      : queue_(queue), guard_ms_(pingpong_guard_ms) {}

  void attach(radio::UeId ue, radio::CellId serving);
  void set_switch_hook(SwitchHook hook) { switch_hook_ = std::move(hook); }

  e2::ControlStatus execute(radio::UeId ue, const e2::HandoverCommand& cmd);

  const UeRanState* state(radio::UeId ue) const;
  std::uint64_t handovers() const { return handovers_; }

 private:
  sim::EventQueue& queue_;
  std::uint32_t guard_ms_;
  SwitchHook switch_hook_;
  std::map<radio::UeId, UeRanState> states_;
  std::uint64_t handovers_ = 0;
};

/// One row per issued handover decision, both modes.
class DecisionLog {
 public:
  struct Row {
    sim::SimTime t;
    radio::UeId ue = 0;
    std::string mode;
    radio::CellId serving = 0;
    radio::CellId target = 0;
    std::uint32_t ttt_ms = 0;
    std::optional<std::uint32_t> k_inv;
    std::optional<std::uint32_t> k_a3;
  };

  void add(Row row) { rows_.push_back(std::move(row)); }
  const std::vector<Row>& rows() const { return rows_; }

  /// CSV `t_ms,ue_id,mode,serving,target,ttt_ms,k_inv,k_a3`; absent steps
  /// are empty fields.
  std::string to_csv() const;

 private:
  std::vector<Row> rows_;
};

}  // namespace oransim::xapps
