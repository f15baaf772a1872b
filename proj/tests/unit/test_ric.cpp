#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "oransim/e2/endpoint.hpp"
#include "oransim/errors.hpp"
#include "oransim/ric/runtime.hpp"
#include "oransim/ric/sdl.hpp"
#include "oransim/sim/event_queue.hpp"
#include "oransim/sim/rng.hpp"
#include "oransim/xapps/kpm_monitor.hpp"

using namespace oransim;
using ric::SdlStore;

namespace {

SdlStore::Sample s(std::int64_t t_ms, double rsrp) {
  return {sim::SimTime{t_ms}, rsrp};
}

}  // namespace

TEST_CASE("sdl put enforces strictly increasing time") {
  SdlStore sdl;
  CHECK(sdl.put(1, 10, sim::SimTime{1000}, -80.0));
  CHECK(sdl.put(1, 10, sim::SimTime{2000}, -81.0));
  CHECK_FALSE(sdl.put(1, 10, sim::SimTime{2000}, -82.0));
  CHECK_FALSE(sdl.put(1, 10, sim::SimTime{1500}, -82.0));
  CHECK(sdl.size(1, 10) == 2);
  CHECK(sdl.window(1, 10, 8) == std::vector{s(1000, -80.0), s(2000, -81.0)});
  // other series are unaffected by the rejection
  CHECK(sdl.put(1, 11, sim::SimTime{1500}, -90.0));
  CHECK(sdl.put(2, 10, sim::SimTime{500}, -91.0));
}

TEST_CASE("sdl window and range queries") {
  SdlStore sdl;
  for (int k = 1; k <= 5; ++k) {
    sdl.put(3, 7, sim::SimTime{k * 1000}, -80.0 - k);
  }
  CHECK(sdl.window(3, 7, 2) == std::vector{s(4000, -84.0), s(5000, -85.0)});
  CHECK(sdl.window(3, 7, 99).size() == 5);
  CHECK(sdl.window(3, 7, 0).empty());
  CHECK(sdl.window(9, 9, 4).empty());
  CHECK(sdl.range_from(3, 7, sim::SimTime{3000}) ==
        std::vector{s(3000, -83.0), s(4000, -84.0), s(5000, -85.0)});
  CHECK(sdl.range_from(3, 7, sim::SimTime{5001}).empty());
}

TEST_CASE("sdl evicts the oldest sample at capacity") {
  SdlStore sdl(4);
  for (int k = 0; k < 7; ++k) {
    CHECK(sdl.put(1, 1, sim::SimTime{k * 100}, static_cast<double>(-k)));
  }
  CHECK(sdl.size(1, 1) == 4);
  const auto w = sdl.window(1, 1, 10);
  REQUIRE(w.size() == 4);
  CHECK(w.front() == s(300, -3.0));
  CHECK(w.back() == s(600, -6.0));
}

TEST_CASE("sdl latest report per ue") {
  SdlStore sdl;
  CHECK(sdl.latest(5) == nullptr);
  radio::MeasurementReport r;
  r.ue = 5;
  r.t = sim::SimTime{1234};
  r.serving = 2;
  r.entries = {{1, -85.0}, {2, -80.0}};
  sdl.set_latest(r);
  REQUIRE(sdl.latest(5) != nullptr);
  CHECK(*sdl.latest(5) == r);
  r.t = sim::SimTime{2234};
  sdl.set_latest(r);
  CHECK(sdl.latest(5)->t == sim::SimTime{2234});
}

TEST_CASE("sdl dump is ordered by ue, cell, time") {
  SdlStore sdl;
  sdl.put(2, 1, sim::SimTime{100}, -70.5);
  sdl.put(1, 2, sim::SimTime{300}, -71.0);
  sdl.put(1, 1, sim::SimTime{200}, -72.0);
  sdl.put(1, 1, sim::SimTime{250}, -73.0);
  CHECK(sdl.dump_csv() ==
        "ue_id,cell_id,t_ms,rsrp_dbm\n"
        "1,1,200,-72\n"
        "1,1,250,-73\n"
        "1,2,300,-71\n"
        "2,1,100,-70.5\n");
}

TEST_CASE("sdl behaves like a bounded map of series") {
  constexpr std::size_t kCapacity = 16;
  SdlStore sdl(kCapacity);
  std::map<std::pair<radio::UeId, radio::CellId>, std::vector<SdlStore::Sample>>
      shadow;
  sim::RngStream rng("sdl/property", 7);

  std::int64_t t = 0;
  for (int step = 0; step < 2000; ++step) {
    const auto ue = static_cast<radio::UeId>(rng.uniform_int(3));
    const auto cell = static_cast<radio::CellId>(rng.uniform_int(3));
    // mostly advances; sometimes replays an old timestamp
    t += static_cast<std::int64_t>(rng.uniform_int(3));
    const std::int64_t probe =
        rng.uniform(0.0, 1.0) < 0.1 ? t / 2 : t;
    const double rsrp = rng.uniform(-120.0, -60.0);

    auto& ref = shadow[{ue, cell}];
    const bool expect_ok =
        ref.empty() || sim::SimTime{probe} > ref.back().t;
    CHECK(sdl.put(ue, cell, sim::SimTime{probe}, rsrp) == expect_ok);
    if (expect_ok) {
      ref.push_back({sim::SimTime{probe}, rsrp});
      if (ref.size() > kCapacity) ref.erase(ref.begin());
    }
  }

  for (const auto& [key, ref] : shadow) {
    CHECK(sdl.size(key.first, key.second) == ref.size());
    for (std::size_t n : {std::size_t{1}, std::size_t{5}, kCapacity, std::size_t{40}}) {
      const auto got = sdl.window(key.first, key.second, n);
      const std::size_t take = std::min(n, ref.size());
      REQUIRE(got.size() == take);
      for (std::size_t i = 0; i < take; ++i) {
        CHECK(got[i] == ref[ref.size() - take + i]);
      }
    }
    const auto cut = ref[ref.size() / 2].t;
    const auto got = sdl.range_from(key.first, key.second, cut);
    std::vector<SdlStore::Sample> want;
    for (const auto& x : ref) {
      if (x.t >= cut) want.push_back(x);
    }
    CHECK(got == want);
  }
}

TEST_CASE("kpm monitor fans reports out into the sdl") {
  SdlStore sdl;
  xapps::KpmMonitor mon(sdl);
  radio::MeasurementReport r;
  r.ue = 4;
  r.t = sim::SimTime{1000};
  r.serving = 1;
  r.entries = {{1, -80.0}, {2, -90.0}, {3, -95.0}};
  mon.on_indication(r);
  CHECK(mon.stored() == 3);
  CHECK(mon.dropped() == 0);
  CHECK(sdl.window(4, 1, 2) == std::vector{s(1000, -80.0)});
  CHECK(sdl.window(4, 2, 2) == std::vector{s(1000, -90.0)});
  CHECK(sdl.window(4, 3, 2) == std::vector{s(1000, -95.0)});
  REQUIRE(sdl.latest(4) != nullptr);
  CHECK(sdl.latest(4)->serving == 1);

  // replaying the same timestamp drops every entry but still refreshes latest
  r.serving = 2;
  mon.on_indication(r);
  CHECK(mon.stored() == 3);
  CHECK(mon.dropped() == 3);
  CHECK(sdl.size(4, 1) == 1);
  CHECK(sdl.latest(4)->serving == 2);
}

namespace {

struct RuntimeHarness {
  sim::EventQueue queue;
  e2::RicEndpoint ric;
  ric::RicRuntime runtime{ric, queue, 64};
  std::vector<e2::RanFunction> functions = {{1, "kpm-report", "reports"},
                                            {2, "handover-control", "commands"}};
  e2::AgentEndpoint agent{3, functions};

  void bring_up() {
    ric.attach_node(3, [this](std::span<const std::uint8_t> b) {
      agent.handle_bytes(b);
    });
    agent.connect(
        [this](std::span<const std::uint8_t> b) { ric.handle_bytes(3, b); });
    agent.start_setup();
  }
};

}  // namespace

TEST_CASE("runtime subscribes xapps on nodes that appear later") {
  RuntimeHarness h;
  std::vector<radio::UeId> seen;
  h.runtime.register_xapp(
      {.name = "monitor", .wanted_subscriptions = {{"kpm-report", 1000}}},
      {.on_indication = [&](const radio::MeasurementReport& r) {
        seen.push_back(r.ue);
      }});
  CHECK(h.agent.state().active_subscriptions.empty());

  h.bring_up();
  REQUIRE(h.agent.state().active_subscriptions.size() == 1);

  radio::MeasurementReport r;
  r.ue = 9;
  r.t = sim::SimTime{0};
  h.agent.deliver_report(r, sim::SimTime{0});
  CHECK(seen == std::vector<radio::UeId>{9});
  CHECK(h.runtime.unrouted_indications() == 0);
}

TEST_CASE("runtime subscribes on established nodes at registration") {
  RuntimeHarness h;
  h.bring_up();
  h.runtime.register_xapp(
      {.name = "monitor", .wanted_subscriptions = {{"kpm-report", 500}}}, {});
  REQUIRE(h.agent.state().active_subscriptions.size() == 1);
  CHECK(h.agent.state().active_subscriptions.begin()->second.period_ms == 500);
}

TEST_CASE("two xapps get distinct subscriptions and routes") {
  RuntimeHarness h;
  h.bring_up();
  int a = 0;
  int b = 0;
  h.runtime.register_xapp(
      {.name = "first", .wanted_subscriptions = {{"kpm-report", 1000}}},
      {.on_indication = [&](const radio::MeasurementReport&) { ++a; }});
  h.runtime.register_xapp(
      {.name = "second", .wanted_subscriptions = {{"kpm-report", 2000}}},
      {.on_indication = [&](const radio::MeasurementReport&) { ++b; }});
  CHECK(h.agent.state().active_subscriptions.size() == 2);

  radio::MeasurementReport r;
  r.ue = 1;
  for (std::int64_t t = 0; t <= 4000; t += 1000) {
    r.t = sim::SimTime{t};
    h.agent.deliver_report(r, sim::SimTime{t});
  }
  CHECK(a == 5);  // every second offer
  CHECK(b == 3);  // 0, 2000, 4000
}

TEST_CASE("duplicate xapp name is a config error") {
  RuntimeHarness h;
  h.runtime.register_xapp({.name = "dup"}, {});
  CHECK_THROWS_AS(h.runtime.register_xapp({.name = "dup"}, {}), ConfigError);
}

TEST_CASE("timer first fires one period after registration") {
  RuntimeHarness h;
  h.queue.run_until(sim::SimTime{200});
  std::vector<std::int64_t> fired;
  h.runtime.register_xapp({.name = "clock", .timer_period_ms = 1000},
                          {.on_timer = [&](sim::SimTime t) {
                            fired.push_back(t.millis());
                          }});
  h.queue.run_until(sim::SimTime{3500});
  CHECK(fired == std::vector<std::int64_t>{1200, 2200, 3200});
}

TEST_CASE("deregistered xapp stops routing and its timer") {
  RuntimeHarness h;
  h.bring_up();
  int indications = 0;
  int timers = 0;
  const auto id = h.runtime.register_xapp(
      {.name = "gone",
       .wanted_subscriptions = {{"kpm-report", 1000}},
       .timer_period_ms = 1000},
      {.on_indication = [&](const radio::MeasurementReport&) { ++indications; },
       .on_timer = [&](sim::SimTime) { ++timers; }});
  radio::MeasurementReport r;
  r.ue = 1;
  r.t = sim::SimTime{0};
  h.agent.deliver_report(r, sim::SimTime{0});
  CHECK(indications == 1);

  h.runtime.deregister_xapp(id);
  r.t = sim::SimTime{1000};
  h.agent.deliver_report(r, sim::SimTime{1000});
  CHECK(indications == 1);
  CHECK(h.runtime.unrouted_indications() == 1);

  h.queue.run_until(sim::SimTime{5000});
  CHECK(timers == 0);
}

TEST_CASE("monitor xapp fills the runtime sdl end to end") {
  RuntimeHarness h;
  h.bring_up();
  xapps::KpmMonitor mon(h.runtime.sdl());
  h.runtime.register_xapp(
      {.name = "kpm-monitor", .wanted_subscriptions = {{"kpm-report", 1000}}},
      {.on_indication = [&](const radio::MeasurementReport& r) {
        mon.on_indication(r);
      }});
  radio::MeasurementReport r;
  r.ue = 2;
  r.serving = 1;
  r.entries = {{1, -75.0}, {2, -88.0}};
  for (std::int64_t t = 1000; t <= 3000; t += 1000) {
    r.t = sim::SimTime{t};
    h.agent.deliver_report(r, sim::SimTime{t});
  }
  CHECK(mon.stored() == 6);
  CHECK(h.runtime.sdl().size(2, 1) == 3);
  CHECK(h.runtime.sdl().size(2, 2) == 3);
  CHECK(h.runtime.sdl().latest(2)->t == sim::SimTime{3000});
}
