#include "oransim/ric/runtime.hpp"

#include <stdexcept>

#include "oransim/errors.hpp"

namespace oransim::ric {

RicRuntime::RicRuntime(e2::RicEndpoint& endpoint, sim::EventQueue& queue,
                       std::size_t sdl_capacity)
    : endpoint_(endpoint), queue_(queue), sdl_(sdl_capacity) {
  endpoint_.set_indication_handler(
      [this](e2::NodeId node, std::uint32_t sub_id,
             const radio::MeasurementReport& report) {
        route_indication(node, sub_id, report);
      });
  endpoint_.set_node_up_handler(
      [this](e2::NodeId node, const std::vector<e2::RanFunction>&) {
        handle_node_up(node);
      });
}

XAppId RicRuntime::register_xapp(XAppDescriptor desc, XAppHooks hooks) {
  for (const auto& [id, app] : xapps_) {
    if (app.desc.name == desc.name) {
      throw ConfigError("duplicate xapp name: " + desc.name);
    }
  }
  const XAppId id = next_id_++;
  auto& app = xapps_[id];
  app.desc = std::move(desc);
  app.hooks = std::move(hooks);
  for (const e2::NodeId node : endpoint_.established_nodes()) {
    subscribe_wanted(id, node);
  }
  if (app.desc.timer_period_ms) arm_timer(id);
  return id;
}

void RicRuntime::deregister_xapp(XAppId id) {
  const auto it = xapps_.find(id);
  if (it == xapps_.end()) return;
  if (it->second.timer_event) queue_.cancel(*it->second.timer_event);
  for (auto route = routes_.begin(); route != routes_.end();) {
    route = route->second == id ? routes_.erase(route) : std::next(route);
  }
  xapps_.erase(it);
}

void RicRuntime::handle_node_up(e2::NodeId node) {
  for (const auto& [id, app] : xapps_) subscribe_wanted(id, node);
}

void RicRuntime::subscribe_wanted(XAppId id, e2::NodeId node) {
  const XApp& app = xapps_.at(id);
  for (const auto& [fn_name, period_ms] : app.desc.wanted_subscriptions) {
    const auto fn_id = endpoint_.function_id_by_name(node, fn_name);
    if (!fn_id) continue;
    const std::uint32_t sub = endpoint_.subscribe(node, *fn_id, period_ms);
    routes_[{node, sub}] = id;
  }
}

void RicRuntime::route_indication(e2::NodeId node, std::uint32_t sub_id,
                                  const radio::MeasurementReport& report) {
  const auto route = routes_.find({node, sub_id});
  if (route == routes_.end()) {
    ++unrouted_;
    return;
  }
  XApp& app = xapps_.at(route->second);
  if (!app.hooks.on_indication) return;
  run_handler([&] { app.hooks.on_indication(report); });
}

void RicRuntime::arm_timer(XAppId id) {
  XApp& app = xapps_.at(id);
  const auto period = sim::millis(*app.desc.timer_period_ms);
  app.timer_event = queue_.schedule(
      queue_.now() + period,
      [this, id] {
        const auto it = xapps_.find(id);
        if (it == xapps_.end()) return;
        const sim::SimTime now = queue_.now();
        if (it->second.hooks.on_timer) {
          run_handler([&] { it->second.hooks.on_timer(now); });
        }
        arm_timer(id);
      },
      "xapp-timer");
}

void RicRuntime::run_handler(const std::function<void()>& body) {
  if (in_handler_) throw std::logic_error("xapp handler reentrancy");
  in_handler_ = true;
  try {
    body();
  } catch (...) {
    in_handler_ = false;
    throw;
  }
  in_handler_ = false;
}

}  // namespace oransim::ric
