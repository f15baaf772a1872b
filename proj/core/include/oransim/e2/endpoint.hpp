#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oransim/e2/codec.hpp"
#include "oransim/e2/message.hpp"
#include "oransim/radio/measurement.hpp"
#include "oransim/sim/time.hpp"

namespace oransim::e2 {

/// Transport hook: delivers one encoded frame to the peer. The transport
/// contract is reliable, ordered, no duplication; the default in-process
/// transport calls the peer's handle_bytes synchronously.
using ByteSink = std::function<void(std::span<const std::uint8_t>)>;

enum class AssociationPhase { idle, setup_sent, established };

struct SubscriptionState {
  std::uint32_t function_id = 0;
  std::uint32_t period_ms = 0;
};

struct AssociationState {
  AssociationPhase phase = AssociationPhase::idle;
  std::vector<RanFunction> registered_functions;
  std::map<std::uint32_t, SubscriptionState> active_subscriptions;
};

/// RAN-side endpoint, one per gNodeB. Owns the node's half of the
/// association and answers subscription and control procedures.
class AgentEndpoint {
 public:
  using ControlHandler =
      std::function<ControlStatus(radio::UeId, const HandoverCommand&)>;

  AgentEndpoint(NodeId node_id, std::vector<RanFunction> functions);

  NodeId node_id() const { return node_id_; }
  const AssociationState& state() const { return state_; }

  void connect(ByteSink to_ric) { to_ric_ = std::move(to_ric); }
  void set_control_handler(ControlHandler handler) {
    control_handler_ = std::move(handler);
  }

  /// Emits the setup request; idle -> setup_sent.
  void start_setup();

  /// Decodes one frame from the RIC and runs the state machine.
  void handle_bytes(std::span<const std::uint8_t> bytes);

  /// Offers a fresh measurement to every active matching subscription.
  /// An indication goes out per subscription when its report period has
  /// elapsed since the previous one.
  void deliver_report(const radio::MeasurementReport& report, sim::SimTime now);

  bool has_function(std::uint32_t function_id) const;

  struct Counters {
    std::uint64_t indications_sent = 0;
    std::uint64_t controls_received = 0;
    std::uint64_t protocol_errors = 0;
  };
  const Counters& counters() const { return counters_; }

 private:
  void handle(const E2Message& msg);
  void send(const E2Message& msg);

  NodeId node_id_;
  AssociationState state_;
  ByteSink to_ric_;
  ControlHandler control_handler_;
  std::map<std::uint32_t, sim::SimTime> next_indication_;
  Counters counters_;
};

/// RIC-side endpoint (E2 termination): node_id-keyed association table,
/// subscription bookkeeping, and indication routing by subscription id.
class RicEndpoint {
 public:
  /// Subscription ids are monotone per association, so the node id is part
  /// of the routing key.
  using IndicationHandler =
      std::function<void(NodeId, std::uint32_t subscription_id,
                         const radio::MeasurementReport&)>;
  using NodeUpHandler =
      std::function<void(NodeId, const std::vector<RanFunction>&)>;

  /// Transport link up for a node; must precede that node's setup.
  void attach_node(NodeId id, ByteSink to_agent);
  void detach_node(NodeId id);

  void set_indication_handler(IndicationHandler handler) {
    on_indication_ = std::move(handler);
  }
  void set_node_up_handler(NodeUpHandler handler) {
    on_node_up_ = std::move(handler);
  }

  /// Decodes one frame arriving from `from` and runs the state machine.
  /// The transport supplies the connection identity; a setup whose node_id
  /// disagrees with it is rejected.
  void handle_bytes(NodeId from, std::span<const std::uint8_t> bytes);

  /// Issues a subscription request to an established node. The id is
  /// RIC-assigned, monotone per association. Returns the id; whether it is
  /// live yet depends on the response (synchronous transports settle it
  /// before this returns).
  std::uint32_t subscribe(NodeId node, std::uint32_t function_id,
                          std::uint32_t period_ms);

  void send_control(NodeId node, radio::UeId ue, const HandoverCommand& cmd);

  bool is_established(NodeId node) const;
  const AssociationState* association(NodeId node) const;
  std::vector<NodeId> established_nodes() const;

  /// Nodes exposing a function with this exact name (established only).
  std::vector<NodeId> nodes_with_function(const std::string& name) const;
  std::optional<std::uint32_t> function_id_by_name(
      NodeId node, const std::string& name) const;

  struct Counters {
    std::uint64_t indications_delivered = 0;
    std::uint64_t indications_dropped = 0;
    std::uint64_t subscriptions_accepted = 0;
    std::uint64_t subscriptions_rejected = 0;
    std::uint64_t controls_sent = 0;
    std::uint64_t controls_acked = 0;
    std::uint64_t control_failures = 0;
    std::uint64_t protocol_errors = 0;
  };
  const Counters& counters() const { return counters_; }

 private:
  struct Association {
    AssociationState state;
    ByteSink to_agent;
    std::uint32_t next_sub_id = 1;
    std::map<std::uint32_t, SubscriptionState> pending_subscriptions;
  };

  void handle(NodeId from, const E2Message& msg);
  void send(Association& assoc, const E2Message& msg);
  Association& require(NodeId node);

  std::map<NodeId, Association> assocs_;
  IndicationHandler on_indication_;
  NodeUpHandler on_node_up_;
  Counters counters_;
};

}  // namespace oransim::e2
