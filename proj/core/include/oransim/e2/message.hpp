#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "oransim/radio/types.hpp"

namespace oransim::e2 {

using NodeId = std::uint32_t;

struct RanFunction {
  std::uint32_t id = 0;
  std::string name;
  std::string description;

  bool operator==(const RanFunction&) const = default;
};

struct HandoverCommand {
  radio::CellId target_cell = 0;
  std::uint32_t ttt_ms = 0;

  bool operator==(const HandoverCommand&) const = default;
};

enum class ControlStatus : std::uint8_t { success = 0, failure = 1 };

/// gNodeB -> RIC: open the association and register the node's RAN functions.
struct E2SetupRequest {
  NodeId node_id = 0;
  std::vector<RanFunction> ran_functions;
  bool operator==(const E2SetupRequest&) const = default;
};

struct E2SetupResponse {
  NodeId node_id = 0;
  bool accepted = false;
  bool operator==(const E2SetupResponse&) const = default;
};

/// RIC -> gNodeB. The requestor id is chosen by the RIC (monotone per
/// association) and doubles as the subscription id echoed back in the
/// response and carried by every indication.
struct RicSubscriptionRequest {
  std::uint32_t requestor_id = 0;
  std::uint32_t ran_function_id = 0;
  std::uint32_t report_period_ms = 0;
  bool operator==(const RicSubscriptionRequest&) const = default;
};

struct RicSubscriptionResponse {
  std::uint32_t subscription_id = 0;
  bool accepted = false;
  bool operator==(const RicSubscriptionResponse&) const = default;
};

/// gNodeB -> RIC: one KPM report on a live subscription.
struct RicIndication {
  std::uint32_t subscription_id = 0;
  radio::MeasurementReport report;
  bool operator==(const RicIndication&) const = default;
};

/// RIC -> gNodeB: execute a handover for one UE.
struct RicControlRequest {
  NodeId node_id = 0;
  radio::UeId ue_id = 0;
  HandoverCommand control;
  bool operator==(const RicControlRequest&) const = default;
};

struct RicControlAck {
  ControlStatus status = ControlStatus::success;
  bool operator==(const RicControlAck&) const = default;
};

/// Variant order defines the wire type tags 0x01..0x07.
using E2Message =
    std::variant<E2SetupRequest, E2SetupResponse, RicSubscriptionRequest,
                 RicSubscriptionResponse, RicIndication, RicControlRequest,
                 RicControlAck>;

const char* message_name(const E2Message& msg);

}  // namespace oransim::e2
