#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "oransim/e2/codec.hpp"
#include "oransim/e2/endpoint.hpp"
#include "oransim/e2/message.hpp"
#include "oransim/radio/types.hpp"
#include "oransim/sim/rng.hpp"

using namespace oransim;
using namespace oransim::e2;

namespace {

std::vector<std::uint8_t> bytes_of(std::initializer_list<int> xs) {
  std::vector<std::uint8_t> out;
  for (int x : xs) out.push_back(static_cast<std::uint8_t>(x));
  return out;
}

std::string random_string(sim::RngStream& rng, std::size_t max_len) {
  static const char alphabet[] =
      "abcdefghijklmnopqrstuvwxyz-0123456789 ";
  const std::size_t len = rng.uniform_int(max_len + 1);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) {
    s += alphabet[rng.uniform_int(sizeof(alphabet) - 1)];
  }
  return s;
}

radio::MeasurementReport random_report(sim::RngStream& rng) {
  radio::MeasurementReport r;
  r.ue = static_cast<radio::UeId>(rng.uniform_int(1000));
  r.t = sim::SimTime{static_cast<std::int64_t>(rng.uniform_int(1'000'000))};
  r.serving = static_cast<radio::CellId>(rng.uniform_int(16));
  const std::size_t n = rng.uniform_int(6);
  for (std::size_t i = 0; i < n; ++i) {
    r.entries.emplace_back(static_cast<radio::CellId>(i + 1),
                           rng.uniform(-140.0, -40.0));
  }
  r.sinr_db = rng.uniform(-20.0, 40.0);
  r.cqi = static_cast<int>(rng.uniform_int(16));
  return r;
}

E2Message random_message(sim::RngStream& rng) {
  switch (rng.uniform_int(7)) {
    case 0: {
      E2SetupRequest m;
      m.node_id = static_cast<NodeId>(rng.uniform_int(1 << 20));
      const std::size_t n = rng.uniform_int(4);
      for (std::size_t i = 0; i < n; ++i) {
        m.ran_functions.push_back({static_cast<std::uint32_t>(
                                       rng.uniform_int(100)),
                                   random_string(rng, 12),
                                   random_string(rng, 20)});
      }
      return m;
    }
    case 1: {
      E2SetupResponse m;
      m.node_id = static_cast<NodeId>(rng.uniform_int(1 << 20));
      m.accepted = rng.uniform_int(2) == 1;
      return m;
    }
    case 2: {
      RicSubscriptionRequest m;
      m.requestor_id = static_cast<std::uint32_t>(rng.uniform_int(1 << 16));
      m.ran_function_id = static_cast<std::uint32_t>(rng.uniform_int(100));
      m.report_period_ms = static_cast<std::uint32_t>(rng.uniform_int(10'000));
      return m;
    }
    case 3: {
      RicSubscriptionResponse m;
      m.subscription_id = static_cast<std::uint32_t>(rng.uniform_int(1 << 16));
      m.accepted = rng.uniform_int(2) == 1;
      return m;
    }
    case 4: {
      RicIndication m;
      m.subscription_id = static_cast<std::uint32_t>(rng.uniform_int(1 << 16));
      m.report = random_report(rng);
      return m;
    }
    case 5: {
      RicControlRequest m;
      m.node_id = static_cast<NodeId>(rng.uniform_int(1 << 20));
      m.ue_id = static_cast<radio::UeId>(rng.uniform_int(1000));
      m.control = {static_cast<radio::CellId>(rng.uniform_int(16)),
                   static_cast<std::uint32_t>(rng.uniform_int(20'000))};
      return m;
    }
    default: {
      RicControlAck m;
      m.status =
          rng.uniform_int(2) == 0 ? ControlStatus::success : ControlStatus::failure;
      return m;
    }
  }
}

}  // namespace

TEST_CASE("setup request golden frame") {
  const E2SetupRequest msg{1, {}};
  const auto frame = encode(msg);
  const auto expected = bytes_of({0x45, 0x32, 0x01, 0x01, 0x00, 0x00, 0x00,
                                  0x06, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00});
  CHECK(frame == expected);
  CHECK(std::get<E2SetupRequest>(decode(frame)) == msg);
}

TEST_CASE("control request golden frame") {
  const RicControlRequest msg{2, 7, {3, 2000}};
  const auto frame = encode(msg);
  const auto expected = bytes_of({0x45, 0x32, 0x01, 0x06, 0x00, 0x00, 0x00,
                                  0x10, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00,
                                  0x00, 0x07, 0x00, 0x00, 0x00, 0x03, 0x00,
                                  0x00, 0x07, 0xD0});
  CHECK(frame == expected);
  CHECK(std::get<RicControlRequest>(decode(frame)) == msg);
}

TEST_CASE("type tags follow variant order") {
  CHECK(encode(E2SetupRequest{})[3] == 0x01);
  CHECK(encode(E2SetupResponse{})[3] == 0x02);
  CHECK(encode(RicSubscriptionRequest{})[3] == 0x03);
  CHECK(encode(RicSubscriptionResponse{})[3] == 0x04);
  CHECK(encode(RicIndication{})[3] == 0x05);
  CHECK(encode(RicControlRequest{})[3] == 0x06);
  CHECK(encode(RicControlAck{})[3] == 0x07);
}

TEST_CASE("round trip over randomized messages") {
  sim::RngStream rng("e2/fuzz", 2024);
  for (int i = 0; i < 2000; ++i) {
    const E2Message msg = random_message(rng);
    const auto frame = encode(msg);
    const E2Message back = decode(frame);
    CHECK(back == msg);
  }
}

TEST_CASE("decode error taxonomy") {
  const auto good = encode(E2SetupRequest{1, {}});

  SUBCASE("bad magic") {
    auto bad = good;
    bad[0] = 0x00;
    CHECK_THROWS_WITH_AS(decode(bad), doctest::Contains("magic"), CodecError);
    try {
      decode(bad);
    } catch (const CodecError& e) {
      CHECK(e.code() == CodecErrorCode::bad_magic);
    }
  }

  SUBCASE("unknown version") {
    auto bad = good;
    bad[2] = 0x09;
    try {
      decode(bad);
      FAIL("expected CodecError");
    } catch (const CodecError& e) {
      CHECK(e.code() == CodecErrorCode::unknown_version);
    }
  }

  SUBCASE("unknown type") {
    auto bad = good;
    bad[3] = 0x7F;
    try {
      decode(bad);
      FAIL("expected CodecError");
    } catch (const CodecError& e) {
      CHECK(e.code() == CodecErrorCode::unknown_type);
    }
  }

  SUBCASE("truncated at every length") {
    for (std::size_t n = 0; n < good.size(); ++n) {
      const std::span<const std::uint8_t> part(good.data(), n);
      CHECK_THROWS_AS(decode(part), CodecError);
    }
  }

  SUBCASE("trailing bytes are a length mismatch") {
    auto bad = good;
    bad.push_back(0x00);
    try {
      decode(bad);
      FAIL("expected CodecError");
    } catch (const CodecError& e) {
      CHECK(e.code() == CodecErrorCode::length_mismatch);
    }
  }

  SUBCASE("oversized string refuses to encode") {
    E2SetupRequest big;
    big.ran_functions.push_back({1, std::string(70'000, 'x'), ""});
    try {
      encode(big);
      FAIL("expected CodecError");
    } catch (const CodecError& e) {
      CHECK(e.code() == CodecErrorCode::field_overflow);
    }
  }
}

TEST_CASE("frame buffer reassembles chunked streams") {
  const auto f1 = encode(E2SetupRequest{1, {{2, "kpm", "reports"}}});
  const auto f2 = encode(RicControlAck{ControlStatus::failure});
  std::vector<std::uint8_t> stream = f1;
  stream.insert(stream.end(), f2.begin(), f2.end());

  for (std::size_t chunk = 1; chunk <= 5; ++chunk) {
    FrameBuffer buf;
    std::vector<std::vector<std::uint8_t>> frames;
    for (std::size_t i = 0; i < stream.size(); i += chunk) {
      const std::size_t n = std::min(chunk, stream.size() - i);
      buf.append(std::span(stream.data() + i, n));
      while (auto frame = buf.next_frame()) frames.push_back(*frame);
    }
    REQUIRE(frames.size() == 2);
    CHECK(frames[0] == f1);
    CHECK(frames[1] == f2);
    CHECK(buf.buffered() == 0);
  }
}

TEST_CASE("frame buffer flags bad magic immediately") {
  FrameBuffer buf;
  const auto junk = bytes_of({0x00, 0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x77});
  buf.append(junk);
  CHECK_THROWS_AS(buf.next_frame(), CodecError);
}

namespace {

struct Harness {
  std::vector<RanFunction> functions = {
      {1, "kpm-report", "periodic reports"},
      {2, "handover-control", "handover commands"}};
  AgentEndpoint agent{7, functions};
  RicEndpoint ric;

  Harness() {
    ric.attach_node(7, [this](std::span<const std::uint8_t> b) {
      agent.handle_bytes(b);
    });
    agent.connect(
        [this](std::span<const std::uint8_t> b) { ric.handle_bytes(7, b); });
  }
};

}  // namespace

TEST_CASE("setup establishes the association on both sides") {
  Harness h;
  CHECK(h.agent.state().phase == AssociationPhase::idle);
  CHECK_FALSE(h.ric.is_established(7));
  h.agent.start_setup();
  CHECK(h.agent.state().phase == AssociationPhase::established);
  CHECK(h.ric.is_established(7));
  CHECK(h.ric.nodes_with_function("kpm-report") == std::vector<NodeId>{7});
  CHECK(h.ric.function_id_by_name(7, "kpm-report") == 1);
  CHECK_FALSE(h.ric.function_id_by_name(7, "nope").has_value());
}

TEST_CASE("subscription then period-gated indications") {
  Harness h;
  h.agent.start_setup();
  const std::uint32_t sub = h.ric.subscribe(7, 1, 1000);
  CHECK(h.ric.counters().subscriptions_accepted == 1);
  REQUIRE(h.agent.state().active_subscriptions.count(sub) == 1);
  CHECK(h.agent.state().active_subscriptions.at(sub).period_ms == 1000);

  int received = 0;
  h.ric.set_indication_handler(
      [&](NodeId node, std::uint32_t id, const radio::MeasurementReport&) {
        CHECK(node == 7);
        CHECK(id == sub);
        ++received;
      });

  radio::MeasurementReport report;
  report.ue = 1;
  for (std::int64_t t = 0; t <= 3000; t += 500) {
    report.t = sim::SimTime{t};
    h.agent.deliver_report(report, sim::SimTime{t});
  }
  // 0, 1000, 2000, 3000 pass the gate; the 500 ms offers do not
  CHECK(received == 4);
  CHECK(h.agent.counters().indications_sent == 4);
  CHECK(h.ric.counters().indications_delivered == 4);
  CHECK(h.ric.counters().indications_dropped == 0);
}

TEST_CASE("subscription for a missing function is rejected") {
  Harness h;
  h.agent.start_setup();
  h.ric.subscribe(7, 42, 1000);
  CHECK(h.ric.counters().subscriptions_rejected == 1);
  CHECK(h.agent.state().active_subscriptions.empty());
}

TEST_CASE("control round trip acks through the handler") {
  Harness h;
  h.agent.start_setup();
  radio::UeId got_ue = 0;
  HandoverCommand got_cmd;
  h.agent.set_control_handler(
      [&](radio::UeId ue, const HandoverCommand& cmd) {
        got_ue = ue;
        got_cmd = cmd;
        return ControlStatus::success;
      });
  h.ric.send_control(7, 42, {3, 2000});
  CHECK(got_ue == 42);
  CHECK(got_cmd == HandoverCommand{3, 2000});
  CHECK(h.ric.counters().controls_sent == 1);
  CHECK(h.ric.counters().controls_acked == 1);
  CHECK(h.ric.counters().control_failures == 0);

  h.agent.set_control_handler(
      [](radio::UeId, const HandoverCommand&) { return ControlStatus::failure; });
  h.ric.send_control(7, 42, {1, 0});
  CHECK(h.ric.counters().controls_sent == 2);
  CHECK(h.ric.counters().control_failures == 1);
}

TEST_CASE("setup with a mismatched node id is rejected") {
  std::vector<RanFunction> fns = {{1, "kpm-report", ""}};
  AgentEndpoint agent(9, fns);
  RicEndpoint ric;
  ric.attach_node(5, [&](std::span<const std::uint8_t> b) {
    agent.handle_bytes(b);
  });
  agent.connect(
      [&](std::span<const std::uint8_t> b) { ric.handle_bytes(5, b); });
  agent.start_setup();
  CHECK_FALSE(ric.is_established(5));
  CHECK_FALSE(ric.is_established(9));
  CHECK(ric.counters().protocol_errors == 1);
}
