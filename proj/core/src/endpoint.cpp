#include "oransim/e2/endpoint.hpp"

#include <algorithm>

#include "oransim/errors.hpp"

namespace oransim::e2 {

AgentEndpoint::AgentEndpoint(NodeId node_id, std::vector<RanFunction> functions)
    : node_id_(node_id) {
  state_.registered_functions = std::move(functions);
}

bool AgentEndpoint::has_function(std::uint32_t function_id) const {
  return std::any_of(state_.registered_functions.begin(),
                     state_.registered_functions.end(),
                     [&](const RanFunction& f) { return f.id == function_id; });
}

void AgentEndpoint::start_setup() {
  if (state_.phase != AssociationPhase::idle) {
    throw ConfigError("setup already started for node " +
                      std::to_string(node_id_));
  }
  state_.phase = AssociationPhase::setup_sent;
  send(E2SetupRequest{node_id_, state_.registered_functions});
}

void AgentEndpoint::send(const E2Message& msg) {
  if (!to_ric_) {
    throw ConfigError("agent endpoint has no transport");
  }
  const auto bytes = encode(msg);
  to_ric_(bytes);
}

void AgentEndpoint::handle_bytes(std::span<const std::uint8_t> bytes) {
  handle(decode(bytes));
}

void AgentEndpoint::handle(const E2Message& msg) {
  if (const auto* resp = std::get_if<E2SetupResponse>(&msg)) {
    if (state_.phase != AssociationPhase::setup_sent ||
        resp->node_id != node_id_) {
      ++counters_.protocol_errors;
      return;
    }
    state_.phase =
        resp->accepted ? AssociationPhase::established : AssociationPhase::idle;
    return;
  }
  if (const auto* sub = std::get_if<RicSubscriptionRequest>(&msg)) {
    if (state_.phase != AssociationPhase::established) {
      ++counters_.protocol_errors;
      send(RicSubscriptionResponse{sub->requestor_id, false});
      return;
    }
    if (!has_function(sub->ran_function_id)) {
      send(RicSubscriptionResponse{sub->requestor_id, false});
      return;
    }
    state_.active_subscriptions[sub->requestor_id] =
        SubscriptionState{sub->ran_function_id, sub->report_period_ms};
    send(RicSubscriptionResponse{sub->requestor_id, true});
    return;
  }
  if (const auto* ctl = std::get_if<RicControlRequest>(&msg)) {
    if (state_.phase != AssociationPhase::established) {
      ++counters_.protocol_errors;
      send(RicControlAck{ControlStatus::failure});
      return;
    }
    ++counters_.controls_received;
    ControlStatus status = ControlStatus::failure;
    if (control_handler_) {
      status = control_handler_(ctl->ue_id, ctl->control);
    } else {
      ++counters_.protocol_errors;
    }
    send(RicControlAck{status});
    return;
  }
  ++counters_.protocol_errors;
}

void AgentEndpoint::deliver_report(const radio::MeasurementReport& report,
                                   sim::SimTime now) {
  if (state_.phase != AssociationPhase::established) return;
  for (const auto& [sub_id, sub] : state_.active_subscriptions) {
    auto [it, fresh] = next_indication_.try_emplace(sub_id, now);
    if (!fresh && now < it->second) continue;
    it->second = now + sim::millis(sub.period_ms);
    ++counters_.indications_sent;
    send(RicIndication{sub_id, report});
  }
}

void RicEndpoint::attach_node(NodeId id, ByteSink to_agent) {
  auto& assoc = assocs_[id];
  assoc.to_agent = std::move(to_agent);
}

void RicEndpoint::detach_node(NodeId id) { assocs_.erase(id); }

RicEndpoint::Association& RicEndpoint::require(NodeId node) {
  auto it = assocs_.find(node);
  if (it == assocs_.end()) {
    throw ConfigError("no association for node " + std::to_string(node));
  }
  return it->second;
}

void RicEndpoint::send(Association& assoc, const E2Message& msg) {
  if (!assoc.to_agent) {
    throw ConfigError("association has no transport");
  }
  const auto bytes = encode(msg);
  assoc.to_agent(bytes);
}

void RicEndpoint::handle_bytes(NodeId from, std::span<const std::uint8_t> bytes) {
  handle(from, decode(bytes));
}

void RicEndpoint::handle(NodeId from, const E2Message& msg) {
  auto it = assocs_.find(from);
  if (it == assocs_.end()) {
    ++counters_.protocol_errors;
    return;
  }
  Association& assoc = it->second;

  if (const auto* setup = std::get_if<E2SetupRequest>(&msg)) {
    if (setup->node_id != from) {
      ++counters_.protocol_errors;
      send(assoc, E2SetupResponse{setup->node_id, false});
      return;
    }
    assoc.state.phase = AssociationPhase::established;
    assoc.state.registered_functions = setup->ran_functions;
    send(assoc, E2SetupResponse{from, true});
    if (on_node_up_) on_node_up_(from, assoc.state.registered_functions);
    return;
  }
  if (const auto* resp = std::get_if<RicSubscriptionResponse>(&msg)) {
    auto pending = assoc.pending_subscriptions.find(resp->subscription_id);
    if (pending == assoc.pending_subscriptions.end()) {
      ++counters_.protocol_errors;
      return;
    }
    if (resp->accepted) {
      assoc.state.active_subscriptions[resp->subscription_id] = pending->second;
      ++counters_.subscriptions_accepted;
    } else {
      ++counters_.subscriptions_rejected;
    }
    assoc.pending_subscriptions.erase(pending);
    return;
  }
  if (const auto* ind = std::get_if<RicIndication>(&msg)) {
    if (!assoc.state.active_subscriptions.contains(ind->subscription_id)) {
      ++counters_.indications_dropped;
      return;
    }
    ++counters_.indications_delivered;
    if (on_indication_) on_indication_(from, ind->subscription_id, ind->report);
    return;
  }
  if (const auto* ack = std::get_if<RicControlAck>(&msg)) {
    if (ack->status == ControlStatus::success) {
      ++counters_.controls_acked;
    } else {
      ++counters_.control_failures;
    }
    return;
  }
  ++counters_.protocol_errors;
}

std::uint32_t RicEndpoint::subscribe(NodeId node, std::uint32_t function_id,
                                     std::uint32_t period_ms) {
  Association& assoc = require(node);
  if (assoc.state.phase != AssociationPhase::established) {
    throw ConfigError("node " + std::to_string(node) + " not established");
  }
  const std::uint32_t id = assoc.next_sub_id++;
  assoc.pending_subscriptions[id] = SubscriptionState{function_id, period_ms};
  send(assoc, RicSubscriptionRequest{id, function_id, period_ms});
  return id;
}

void RicEndpoint::send_control(NodeId node, radio::UeId ue,
                               const HandoverCommand& cmd) {
  Association& assoc = require(node);
  if (assoc.state.phase != AssociationPhase::established) {
    throw ConfigError("node " + std::to_string(node) + " not established");
  }
  ++counters_.controls_sent;
  send(assoc, RicControlRequest{node, ue, cmd});
}

bool RicEndpoint::is_established(NodeId node) const {
  const auto it = assocs_.find(node);
  return it != assocs_.end() &&
         it->second.state.phase == AssociationPhase::established;
}

const AssociationState* RicEndpoint::association(NodeId node) const {
  const auto it = assocs_.find(node);
  return it == assocs_.end() ? nullptr : &it->second.state;
}

std::vector<NodeId> RicEndpoint::established_nodes() const {
  std::vector<NodeId> out;
  for (const auto& [id, assoc] : assocs_) {
    if (assoc.state.phase == AssociationPhase::established) out.push_back(id);
  }
  return out;
}

std::vector<NodeId> RicEndpoint::nodes_with_function(
    const std::string& name) const {
  std::vector<NodeId> out;
  for (const auto& [id, assoc] : assocs_) {
    if (assoc.state.phase != AssociationPhase::established) continue;
    for (const auto& f : assoc.state.registered_functions) {
      if (f.name == name) {
        out.push_back(id);
        break;
      }
    }
  }
  return out;
}

std::optional<std::uint32_t> RicEndpoint::function_id_by_name(
    NodeId node, const std::string& name) const {
  const auto it = assocs_.find(node);
  if (it == assocs_.end()) return std::nullopt;
  for (const auto& f : it->second.state.registered_functions) {
    if (f.name == name) return f.id;
  }
  return std::nullopt;
}

}  // namespace oransim::e2
