#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "oransim/errors.hpp"
#include "oransim/sim/event_queue.hpp"
#include "oransim/sim/rng.hpp"
#include "oransim/sim/time.hpp"

using namespace oransim;
using sim::EventQueue;
using sim::RngStream;
using sim::SimTime;

TEST_CASE("sim time arithmetic") {
  CHECK(sim::millis(1500).ms == 1500);
  CHECK(sim::seconds(2) == sim::millis(2000));
  CHECK((SimTime{300} + SimTime{700}).ms == 1000);
  CHECK((SimTime{1000} - SimTime{1}).ms == 999);
  CHECK(SimTime{500}.seconds() == doctest::Approx(0.5));
  CHECK(SimTime{1} < SimTime{2});
}

TEST_CASE("rng streams are deterministic per (label, seed)") {
  RngStream a("radio", 42);
  RngStream b("radio", 42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  RngStream c("radio", 43);
  RngStream d("traffic", 42);
  RngStream e("radio", 42);
  bool differs_seed = false, differs_label = false;
  for (int i = 0; i < 16; ++i) {
    const std::uint64_t v = e.next_u64();
    differs_seed |= c.next_u64() != v;
    differs_label |= d.next_u64() != v;
  }
  CHECK(differs_seed);
  CHECK(differs_label);
}

TEST_CASE("rng uniform bounds and moments") {
  RngStream rng("u", 7);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double v = rng.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
    sum += v;
  }
  CHECK(sum / 20000 == doctest::Approx(0.5).epsilon(0.02));

  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(-3.0, 5.0);
    CHECK(v >= -3.0);
    CHECK(v < 5.0);
  }
}

TEST_CASE("rng uniform_int range and coverage") {
  RngStream rng("i", 9);
  std::map<std::uint64_t, int> hits;
  for (int i = 0; i < 6000; ++i) {
    const std::uint64_t v = rng.uniform_int(6);
    CHECK(v < 6);
    ++hits[v];
  }
  CHECK(hits.size() == 6);
  for (const auto& [v, n] : hits) CHECK(n > 700);
  CHECK(rng.uniform_int(1) == 0);
}

TEST_CASE("rng normal moments") {
  RngStream rng("n", 3);
  double sum = 0.0, sq = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const double v = rng.normal();
    sum += v;
    sq += v * v;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(mean == doctest::Approx(0.0).epsilon(1.0).scale(0.02));
  CHECK(var == doctest::Approx(1.0).epsilon(0.03));
  CHECK(rng.normal(10.0, 0.0) == doctest::Approx(10.0));
}

TEST_CASE("event queue dispatches by time then insertion order") {
  EventQueue q;
  std::vector<int> order;
  q.schedule(SimTime{20}, [&] { order.push_back(3); });
  q.schedule(SimTime{10}, [&] { order.push_back(1); });
  q.schedule(SimTime{10}, [&] { order.push_back(2); });
  q.schedule(SimTime{30}, [&] { order.push_back(4); });
  q.run_until(SimTime{100});
  CHECK(order == std::vector<int>{1, 2, 3, 4});
  CHECK(q.now() == SimTime{100});
  CHECK(q.empty());
}

TEST_CASE("event queue cancel") {
  EventQueue q;
  int fired = 0;
  const auto id = q.schedule(SimTime{5}, [&] { ++fired; });
  q.schedule(SimTime{6}, [&] { ++fired; });
  CHECK(q.cancel(id));
  CHECK_FALSE(q.cancel(id));
  CHECK_FALSE(q.cancel(9999));
  q.run_until(SimTime{10});
  CHECK(fired == 1);
  CHECK(q.stats().scheduled == 2);
  CHECK(q.stats().dispatched == 1);
  CHECK(q.stats().cancelled == 1);
}

TEST_CASE("event queue rejects scheduling into the past") {
  EventQueue q;
  q.schedule(SimTime{10}, [] {});
  q.run_until(SimTime{10});
  CHECK_THROWS_AS(q.schedule(SimTime{5}, [] {}), ConfigError);
}

TEST_CASE("events scheduled while running dispatch in the same pass") {
  EventQueue q;
  std::vector<int> order;
  q.schedule(SimTime{10}, [&] {
    order.push_back(1);
    q.schedule(SimTime{10}, [&] { order.push_back(2); });
    q.schedule(SimTime{15}, [&] { order.push_back(3); });
  });
  q.run_until(SimTime{20});
  CHECK(order == std::vector<int>{1, 2, 3});
}

TEST_CASE("run_until stops before later events and cancels leftovers") {
  EventQueue q;
  int fired = 0;
  q.schedule(SimTime{10}, [&] { ++fired; });
  q.schedule(SimTime{50}, [&] { ++fired; });
  q.run_until(SimTime{20});
  CHECK(fired == 1);
  CHECK(q.now() == SimTime{20});
  CHECK(q.empty());
  CHECK(q.stats().cancelled == 1);
}

TEST_CASE("step dispatches one event at a time") {
  EventQueue q;
  int fired = 0;
  q.schedule(SimTime{1}, [&] { ++fired; });
  q.schedule(SimTime{2}, [&] { ++fired; });
  CHECK(q.step());
  CHECK(fired == 1);
  CHECK(q.now() == SimTime{1});
  CHECK(q.step());
  CHECK_FALSE(q.step());
  CHECK(fired == 2);
}
