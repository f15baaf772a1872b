#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oransim/e2/endpoint.hpp"
#include "oransim/ric/sdl.hpp"
#include "oransim/sim/event_queue.hpp"

namespace oransim::ric {

struct XAppDescriptor {
  std::string name;
  /// (ran function name, report period ms); subscribed on every node that
  /// exposes the function, now or later.
  std::vector<std::pair<std::string, std::uint32_t>> wanted_subscriptions;
  std::optional<std::uint32_t> timer_period_ms;
};

struct XAppHooks {
  std::function<void(const radio::MeasurementReport&)> on_indication;
  std::function<void(sim::SimTime)> on_timer;
};

using XAppId = std::uint32_t;

/// Hosts xApps over a RIC endpoint: issues their subscriptions, routes
/// indications to them by (node, subscription id), and drives their timers
/// off the event queue. Owns the SDL store the xApps share.
///
/// Handlers run synchronously on the caller's stack and must not re-enter
/// the dispatcher.
class RicRuntime {
 public:
  RicRuntime(e2::RicEndpoint& endpoint, sim::EventQueue& queue,
             std::size_t sdl_capacity = 256);

  /// Throws ConfigError on duplicate name. Timer first fires one period
  /// after registration.
  XAppId register_xapp(XAppDescriptor desc, XAppHooks hooks);

  /// Cancels the xApp's timer and routing; its subscriptions stay live on
  /// the agent side (the protocol has no unsubscribe), so later indications
  /// for them count as unrouted.
  void deregister_xapp(XAppId id);

  SdlStore& sdl() { return sdl_; }
  const SdlStore& sdl() const { return sdl_; }

  std::uint64_t unrouted_indications() const { return unrouted_; }

 private:
  struct XApp {
    XAppDescriptor desc;
    XAppHooks hooks;
    std::optional<sim::EventId> timer_event;
  };

  void handle_node_up(e2::NodeId node);
  void subscribe_wanted(XAppId id, e2::NodeId node);
  void route_indication(e2::NodeId node, std::uint32_t sub_id,
                        const radio::MeasurementReport& report);
  void arm_timer(XAppId id);
  void run_handler(const std::function<void()>& body);

  e2::RicEndpoint& endpoint_;
  sim::EventQueue& queue_;
  SdlStore sdl_;
  std::map<XAppId, XApp> xapps_;
  std::map<std::pair<e2::NodeId, std::uint32_t>, XAppId> routes_;
  XAppId next_id_ = 1;
  bool in_handler_ = false;
  std::uint64_t unrouted_ = 0;
};

}  // namespace oransim::ric
