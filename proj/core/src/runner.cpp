#include "oransim/sim/runner.hpp"

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "oransim/errors.hpp"
#include "oransim/e2/endpoint.hpp"
#include "oransim/nn/model_predictor.hpp"
#include "oransim/ric/runtime.hpp"
#include "oransim/sim/event_queue.hpp"
#include "oransim/traffic/apps.hpp"
#include "oransim/traffic/link.hpp"
#include "oransim/xapps/kpm_monitor.hpp"

namespace oransim::sim {
namespace {

constexpr std::uint32_t kKpmFunctionId = 1;
constexpr std::uint32_t kControlFunctionId = 2;
constexpr const char* kKpmFunctionName = "kpm-report";
constexpr std::int64_t kTickMs = 5;

enum class AppTag { stream, ota };

struct UeTraffic {
  traffic::LinkQueue queue;
  std::deque<AppTag> tags;  // FIFO, parallel to the link queue
  traffic::InterruptionSchedule outages;
  std::unique_ptr<traffic::StreamSource> stream_src;
  std::unique_ptr<traffic::StreamReceiver> stream_recv;
  std::unique_ptr<traffic::OtaReceiver> ota_recv;
};

std::shared_ptr<nn::RecurrentModel> load_model(const RunConfig& config) {
  if (config.model_path.empty()) {
    throw ConfigError(std::string("mode ") + mode_name(config.mode) +
                      " requires a trained model file");
  }
  auto model =
      std::make_shared<nn::RecurrentModel>(nn::RecurrentModel::load(config.model_path));
  const nn::Arch wanted =
      config.mode == RunMode::gru ? nn::Arch::gru : nn::Arch::lstm;
  if (model->config().arch != wanted) {
    throw ConfigError("model architecture does not match mode " +
                      std::string(mode_name(config.mode)));
  }
  return model;
}

}  // namespace

RunResult run_scenario(const Scenario& sc, const RunConfig& cfg) {
  validate_scenario(sc);

  EventQueue queue;
  const SimTime duration = sc.duration;
  const std::int64_t period_ms = sc.report_period.ms;

  std::vector<radio::UeId> ue_ids;
  std::map<radio::UeId, radio::RadioTrace> traces;
  for (const auto& ue : sc.ues) {
    ue_ids.push_back(ue.vehicle.id);
    traces.emplace(ue.vehicle.id,
                   radio::RadioTrace(sc.cells, make_mobility(ue.vehicle),
                                     ue.vehicle.id, cfg.seed, sc.radio,
                                     sc.report_period, duration));
  }

  // RAN side: one agent per cell, one executor for the whole RAN.
  xapps::HandoverExecutor exec(queue, sc.policy.pingpong_guard_ms);
  for (radio::UeId ue : ue_ids) {
    exec.attach(ue, traces.at(ue).strongest_cell(0));
  }

  const std::vector<e2::RanFunction> functions = {
      {kKpmFunctionId, kKpmFunctionName, "periodic per-ue measurement reports"},
      {kControlFunctionId, "handover-control", "ttt-scheduled handover commands"},
  };
  e2::RicEndpoint ric;
  std::map<radio::CellId, e2::AgentEndpoint> agents;
  for (const auto& cell : sc.cells) {
    e2::AgentEndpoint& agent =
        agents.try_emplace(cell.id, cell.id, functions).first->second;
    agent.set_control_handler(
        [&exec](radio::UeId ue, const e2::HandoverCommand& cmd) {
          return exec.execute(ue, cmd);
        });
    ric.attach_node(cell.id, [&agent](std::span<const std::uint8_t> bytes) {
      agent.handle_bytes(bytes);
    });
    agent.connect([&ric, id = cell.id](std::span<const std::uint8_t> bytes) {
      ric.handle_bytes(id, bytes);
    });
  }

  // Traffic state, metrics, interruption wiring.
  traffic::LinkModel link;
  traffic::MetricsCollector metrics;
  std::map<radio::UeId, UeTraffic> tstate;
  for (const auto& ue : sc.ues) {
    metrics.register_ue(ue.vehicle.id);
    UeTraffic& ts = tstate[ue.vehicle.id];
    if (ue.streaming) {
      ts.stream_src = std::make_unique<traffic::StreamSource>(
          sc.streaming, cfg.seed, ue.vehicle.id);
      ts.stream_recv = std::make_unique<traffic::StreamReceiver>(
          sc.streaming.frame_period_ms, sc.streaming.prebuffer_frames);
    }
    if (ue.ota) ts.ota_recv = std::make_unique<traffic::OtaReceiver>(sc.ota);
  }

  xapps::DecisionLog decisions;
  exec.set_switch_hook([&](radio::UeId ue, radio::CellId, radio::CellId,
                           SimTime t) {
    tstate.at(ue).outages.add(t, SimTime{t.ms + link.interruption_ms});
  });

  // RIC side.
  ric::RicRuntime runtime(ric, queue, sc.sdl_capacity);
  xapps::KpmMonitor monitor(runtime.sdl());

  // Reports before timers at coincident instants: the report events are all
  // scheduled ahead of xApp registration, so their sequence numbers sort
  // first and the SDL is fresh when a decision runs.
  for (radio::UeId ue : ue_ids) {
    const radio::RadioTrace& trace = traces.at(ue);
    for (std::int64_t t = period_ms; t <= duration.ms; t += period_ms) {
      queue.schedule(
          SimTime{t},
          [&, ue, t] {
            const std::size_t row = trace.row_at(SimTime{t});
            const radio::CellId serving = exec.state(ue)->serving;
            const auto report = trace.report_at(row, serving, ue);
            agents.at(serving).deliver_report(report, SimTime{t});
            metrics.record_cqi(SimTime{t}, ue, trace.link_cqi(row, serving));
          },
          "kpm-report");
    }
  }

  {
    ric::XAppDescriptor desc;
    desc.name = "kpm-monitor";
    desc.wanted_subscriptions = {
        {kKpmFunctionName, static_cast<std::uint32_t>(period_ms)}};
    ric::XAppHooks hooks;
    hooks.on_indication = [&monitor](const radio::MeasurementReport& report) {
      monitor.on_indication(report);
    };
    runtime.register_xapp(std::move(desc), std::move(hooks));
  }

  std::unique_ptr<xapps::Predictor> predictor;
  if (cfg.mode == RunMode::oracle) {
    auto oracle = std::make_unique<xapps::OraclePredictor>();
    for (radio::UeId ue : ue_ids) oracle->add_trace(ue, &traces.at(ue));
    predictor = std::move(oracle);
  } else if (cfg.mode == RunMode::gru || cfg.mode == RunMode::lstm) {
    predictor = std::make_unique<nn::ModelPredictor>(load_model(cfg));
  }

  std::map<radio::UeId, std::optional<SimTime>> ric_allowed_after;
  if (predictor) {
    ric::XAppDescriptor desc;
    desc.name = "ho-manager";
    desc.timer_period_ms = sc.policy.check_period_ms;
    ric::XAppHooks hooks;
    hooks.on_timer = [&](SimTime now) {
      for (radio::UeId ue : ue_ids) {
        const auto request = xapps::ho_check(ue, sc.policy, runtime.sdl(), now,
                                             ric_allowed_after[ue]);
        if (!request) continue;
        auto outcome =
            xapps::qp_predict(ue, request->serving, request->target, sc.policy,
                              *predictor, runtime.sdl());
        if (outcome.insufficient_history) {
          // Warm-up: conventional trigger until the predictor has a full
          // lookback of history.
          const auto target = xapps::baseline_ho_check(
              *runtime.sdl().latest(ue), sc.policy.hom_db);
          if (!target) continue;
          outcome.decision = xapps::PredictionOutcome::Decision::handover;
          outcome.target = *target;
          outcome.ttt_ms = 0;
        }
        if (outcome.decision !=
            xapps::PredictionOutcome::Decision::handover) {
          continue;
        }
        const e2::HandoverCommand cmd{outcome.target, outcome.ttt_ms};
        const std::uint64_t acked = ric.counters().controls_acked;
        ric.send_control(request->serving, ue, cmd);
        if (ric.counters().controls_acked == acked) continue;
        const SimTime exec_at{now.ms + outcome.ttt_ms};
        ric_allowed_after[ue] =
            SimTime{exec_at.ms + sc.policy.pingpong_guard_ms};
        decisions.add({now, ue, mode_name(cfg.mode), request->serving,
                       outcome.target, outcome.ttt_ms, outcome.inversion_step,
                       outcome.a3_step});
      }
    };
    runtime.register_xapp(std::move(desc), std::move(hooks));
  }

  // Conventional path stays on the RAN: trigger directly off each fresh
  // report, no RIC round trip.
  std::map<radio::UeId, std::optional<SimTime>> ran_allowed_after;
  if (cfg.mode == RunMode::default_a3) {
    for (radio::UeId ue : ue_ids) {
      const radio::RadioTrace& trace = traces.at(ue);
      for (std::int64_t t = period_ms; t <= duration.ms; t += period_ms) {
        queue.schedule(
            SimTime{t},
            [&, ue, t] {
              const auto& allowed = ran_allowed_after[ue];
              if (allowed && t < allowed->ms) return;
              const std::size_t row = trace.row_at(SimTime{t});
              const radio::CellId serving = exec.state(ue)->serving;
              const auto report = trace.report_at(row, serving, ue);
              const auto target =
                  xapps::baseline_ho_check(report, sc.policy.hom_db);
              if (!target) return;
              const auto status = exec.execute(ue, {*target, 0});
              if (status != e2::ControlStatus::success) return;
              ran_allowed_after[ue] =
                  SimTime{t + sc.policy.pingpong_guard_ms};
              decisions.add({SimTime{t}, ue, mode_name(cfg.mode), serving,
                             *target, 0, std::nullopt, std::nullopt});
            },
            "a3-check");
      }
    }
  }

  // Application sends, then link ticks, so a packet enqueued on a tick
  // boundary is visible to that tick's drain.
  for (const auto& ue : sc.ues) {
    UeTraffic& ts = tstate.at(ue.vehicle.id);
    if (ue.streaming) {
      for (std::int64_t t = 0; t <= duration.ms;
           t += sc.streaming.frame_period_ms) {
        queue.schedule(
            SimTime{t},
            [&ts, t] {
              ts.queue.enqueue(ts.stream_src->next_frame_bytes(), SimTime{t});
              ts.tags.push_back(AppTag::stream);
            },
            "stream-frame");
      }
    }
    if (ue.ota) {
      const std::int64_t packets = sc.ota.packet_count();
      for (std::int64_t k = 0; k < packets; ++k) {
        const std::int64_t t = k * sc.ota.interval_ms;
        if (t > duration.ms) break;
        const std::int64_t bytes =
            k == packets - 1
                ? sc.ota.total_bytes - (packets - 1) * sc.ota.packet_bytes
                : sc.ota.packet_bytes;
        queue.schedule(
            SimTime{t},
            [&ts, bytes, t] {
              ts.queue.enqueue(bytes, SimTime{t});
              ts.tags.push_back(AppTag::ota);
            },
            "ota-packet");
      }
    }
  }

  for (const auto& ue : sc.ues) {
    const radio::UeId id = ue.vehicle.id;
    UeTraffic& ts = tstate.at(id);
    const radio::RadioTrace& trace = traces.at(id);
    for (std::int64_t t = kTickMs; t <= duration.ms; t += kTickMs) {
      queue.schedule(
          SimTime{t},
          [&, id, t] {
            const std::size_t row = trace.row_at(SimTime{t});
            const radio::CellId serving = exec.state(id)->serving;
            const int cqi = trace.link_cqi(row, serving);
            const double fraction =
                ts.outages.available_fraction(SimTime{t - kTickMs}, SimTime{t});
            const double budget = link.capacity_bps(cqi) *
                                  (static_cast<double>(kTickMs) / 1000.0) *
                                  fraction;
            for (const auto& d : ts.queue.serve(budget, SimTime{t})) {
              metrics.record_delay(SimTime{t}, id, d.delay_ms);
              metrics.record_delivery(SimTime{t}, id, d.bytes);
              const AppTag tag = ts.tags.front();
              ts.tags.pop_front();
              if (tag == AppTag::stream) {
                ts.stream_recv->on_frame(SimTime{t});
              } else if (ts.ota_recv) {
                ts.ota_recv->on_delivery(d.bytes, SimTime{t});
              }
            }
          },
          "link-tick");
    }
  }

  for (auto& [id, agent] : agents) agent.start_setup();
  queue.run_until(duration);

  for (const auto& ue : sc.ues) {
    UeTraffic& ts = tstate.at(ue.vehicle.id);
    if (ts.stream_recv) {
      for (const auto& f : ts.stream_recv->freezes()) {
        metrics.record_freeze(f.at, ue.vehicle.id, f.duration_ms);
      }
    }
    if (ts.ota_recv && ts.ota_recv->complete()) {
      metrics.set_ota_completion(ts.ota_recv->completion_time());
    }
  }

  RunResult result;
  result.metrics = metrics.aggregate(duration);
  result.handovers = exec.handovers();
  const auto& rc = ric.counters();
  result.e2.indications = rc.indications_delivered;
  result.e2.indications_dropped = rc.indications_dropped;
  result.e2.unrouted = runtime.unrouted_indications();
  result.e2.controls_sent = rc.controls_sent;
  result.e2.controls_acked = rc.controls_acked;
  result.e2.control_failures = rc.control_failures;
  result.e2.protocol_errors = rc.protocol_errors;
  for (const auto& [id, agent] : agents) {
    result.e2.protocol_errors += agent.counters().protocol_errors;
  }
  result.decisions = decisions;
  result.metrics_csv = metrics.to_csv(duration);
  result.decisions_csv = decisions.to_csv();
  result.sdl_csv = runtime.sdl().dump_csv();

  nlohmann::ordered_json agg;
  agg["scenario"] = sc.name;
  agg["mode"] = mode_name(cfg.mode);
  agg["seed"] = cfg.seed;
  agg["duration_ms"] = duration.ms;
  agg["handovers"] = result.handovers;
  agg["indications"] = result.e2.indications;
  agg["controls_acked"] = result.e2.controls_acked;
  agg["mean_cqi"] = result.metrics.mean_cqi;
  agg["mean_delay_ms"] = result.metrics.mean_delay_ms;
  agg["mean_throughput_bps"] = result.metrics.mean_throughput_bps;
  agg["freeze_count"] = result.metrics.freeze_count;
  agg["freeze_total_ms"] = result.metrics.freeze_total_ms;
  if (result.metrics.ota_completion_ms) {
    agg["ota_completion_ms"] = *result.metrics.ota_completion_ms;
  } else {
    agg["ota_completion_ms"] = nullptr;
  }
  agg["cqi_samples"] = result.metrics.cqi_samples;
  agg["delay_samples"] = result.metrics.delay_samples;
  agg["delivered_bytes"] = result.metrics.delivered_bytes;
  result.aggregates_json = agg.dump(2) + "\n";
  return result;
}

}  // namespace oransim::sim
