#include "oransim/xapps/handover.hpp"

#include <cassert>
#include <cstdio>

#include "oransim/errors.hpp"

namespace oransim::xapps {

std::optional<radio::CellId> strongest_neighbor(
    const radio::MeasurementReport& report) {
  std::optional<radio::CellId> best;
  double best_rsrp = 0.0;
  for (const auto& [cell, rsrp] : report.entries) {
    if (cell == report.serving) continue;
    if (!best || rsrp > best_rsrp) {
      best = cell;
      best_rsrp = rsrp;
    }
  }
  return best;
}

std::optional<PredictionRequest> ho_check(
    radio::UeId ue, const HoPolicy& policy, const ric::SdlStore& sdl,
    sim::SimTime now, std::optional<sim::SimTime> allowed_after) {
  if (allowed_after && now < *allowed_after) return std::nullopt;
  const radio::MeasurementReport* latest = sdl.latest(ue);
  if (!latest) return std::nullopt;
  const auto target = strongest_neighbor(*latest);
  if (!target) return std::nullopt;
  if (latest->rsrp_of(*target) + policy.hom_db >
      latest->rsrp_of(latest->serving)) {
    return PredictionRequest{latest->serving, *target};
  }
  return std::nullopt;
}

PredictionOutcome qp_predict(radio::UeId ue, radio::CellId serving,
                             radio::CellId target, const HoPolicy& policy,
                             Predictor& model, const ric::SdlStore& sdl) {
  PredictionOutcome out;
  out.target = target;
  const std::size_t lookback = model.lookback();
  const auto hist_serv = sdl.window(ue, serving, lookback);
  const auto hist_tgt = sdl.window(ue, target, lookback);
  if (hist_serv.size() < lookback || hist_tgt.size() < lookback) {
    out.insufficient_history = true;
    return out;
  }
  std::vector<double> fc_serv, fc_tgt;
  try {
    fc_serv = model.forecast(ue, serving, hist_serv, policy.horizon_n);
    fc_tgt = model.forecast(ue, target, hist_tgt, policy.horizon_n);
  } catch (const ModelError&) {
    out.model_error = true;
    return out;
  }
  if (fc_serv.size() < policy.horizon_n || fc_tgt.size() < policy.horizon_n) {
    out.model_error = true;
    return out;
  }
  for (std::uint32_t k = 1; k <= policy.horizon_n; ++k) {
    const double s = fc_serv[k - 1];
    const double t = fc_tgt[k - 1];
    if (!out.inversion_step && t > s) out.inversion_step = k;
    if (t - policy.hom_db > s) {
      out.a3_step = k;
      break;
    }
  }
  if (out.inversion_step) {
    out.ttt_ms = *out.inversion_step * policy.prediction_step_ms;
  }
  if (out.a3_step) {
    assert(out.inversion_step && *out.inversion_step <= *out.a3_step);
    out.decision = PredictionOutcome::Decision::handover;
  }
  return out;
}

std::optional<radio::CellId> baseline_ho_check(
    const radio::MeasurementReport& latest, double hom_db) {
  const auto target = strongest_neighbor(latest);
  if (!target) return std::nullopt;
  if (latest.rsrp_of(*target) - hom_db > latest.rsrp_of(latest.serving)) {
    return target;
  }
  return std::nullopt;
}

void HandoverExecutor::attach(radio::UeId ue, radio::CellId serving) {
  states_[ue] = UeRanState{serving, std::nullopt, false};
}

const UeRanState* HandoverExecutor::state(radio::UeId ue) const {
  const auto it = states_.find(ue);
  return it == states_.end() ? nullptr : &it->second;
}

e2::ControlStatus HandoverExecutor::execute(radio::UeId ue,
                                            const e2::HandoverCommand& cmd) {
  const auto it = states_.find(ue);
  if (it == states_.end() || it->second.command_pending) {
    return e2::ControlStatus::failure;
  }
  it->second.command_pending = true;
  queue_.schedule(
      queue_.now() + sim::millis(cmd.ttt_ms),
      [this, ue, target = cmd.target_cell] {
        UeRanState& st = states_.at(ue);
        const radio::CellId from = st.serving;
        st.serving = target;
        st.command_pending = false;
        st.guard_until = queue_.now() + sim::millis(guard_ms_);
        ++handovers_;
        if (switch_hook_) switch_hook_(ue, from, target, queue_.now());
      },
      "handover-exec");
  return e2::ControlStatus::success;
}

std::string DecisionLog::to_csv() const {
  std::string out = "t_ms,ue_id,mode,serving,target,ttt_ms,k_inv,k_a3\n";
  char buf[192];
  for (const Row& r : rows_) {
    const std::string k_inv = r.k_inv ? std::to_string(*r.k_inv) : "";
    const std::string k_a3 = r.k_a3 ? std::to_string(*r.k_a3) : "";
    std::snprintf(buf, sizeof(buf), "%lld,%u,%s,%u,%u,%u,%s,%s\n",
                  static_cast<long long>(r.t.ms), r.ue, r.mode.c_str(),
                  r.serving, r.target, r.ttt_ms, k_inv.c_str(), k_a3.c_str());
    out += buf;
  }
  return out;
}

}  // namespace oransim::xapps
