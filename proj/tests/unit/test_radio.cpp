#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oransim/radio/channel.hpp"
#include "oransim/radio/measurement.hpp"
#include "oransim/radio/mobility.hpp"
#include "oransim/sim/rng.hpp"

using namespace oransim;
using namespace oransim::radio;
using sim::SimTime;

TEST_CASE("path loss golden values") {
  CHECK(path_loss_db(100.0, 3.5) == doctest::Approx(82.88136945).epsilon(1e-9));
  CHECK(path_loss_db(1000.0, 3.5) ==
        doctest::Approx(104.88136945).epsilon(1e-9));
  // below 1 m clamps to 1 m
  CHECK(path_loss_db(0.5, 3.5) == doctest::Approx(path_loss_db(1.0, 3.5)));
  // +22 dB per decade of distance
  CHECK(path_loss_db(2000.0, 3.5) - path_loss_db(200.0, 3.5) ==
        doctest::Approx(22.0));
}

TEST_CASE("noise floor") {
  CHECK(noise_floor_dbm(100.0) == doctest::Approx(-87.0));
  CHECK(noise_floor_dbm(20.0) == doctest::Approx(-93.9897000434).epsilon(1e-9));
  CHECK(noise_floor_dbm(100.0, 0.0) == doctest::Approx(-94.0));
}

TEST_CASE("rsrp from cell config") {
  CellConfig cell;
  cell.id = 1;
  cell.position = {0.0, 0.0};
  const double expected = 46.0 - path_loss_db(100.0, 3.5) - 2.5;
  CHECK(rsrp_dbm(cell, {100.0, 0.0}, 2.5) == doctest::Approx(expected));
}

TEST_CASE("sinr against interference plus noise") {
  const std::vector<std::pair<CellId, double>> rsrps = {
      {1, -80.0}, {2, -90.0}, {3, -95.0}};
  const double noise = -87.0;
  const auto mw = [](double dbm) { return std::pow(10.0, dbm / 10.0); };
  const double expected =
      10.0 * std::log10(mw(-80.0) / (mw(-90.0) + mw(-95.0) + mw(noise)));
  CHECK(sinr_db(rsrps, 1, noise) == doctest::Approx(expected).epsilon(1e-12));
  // single cell: pure SNR
  CHECK(sinr_db({{7, -60.0}}, 7, -87.0) == doctest::Approx(27.0));
}

TEST_CASE("cqi thresholds") {
  CHECK(cqi_from_sinr(-10.0) == 0);
  CHECK(cqi_from_sinr(-6.7) == 1);
  CHECK(cqi_from_sinr(5.0) == 6);
  CHECK(cqi_from_sinr(22.7) == 15);
  CHECK(cqi_from_sinr(40.0) == 15);
  // monotone
  int prev = 0;
  for (double s = -12.0; s <= 30.0; s += 0.25) {
    const int c = cqi_from_sinr(s);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("shadowing field is stationary and correlated") {
  ShadowingField field(sim::RngStream("shadowing/test", 5), 4.0, 50.0);
  // stationary moments over many independent fields
  double sum = 0.0, sq = 0.0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    ShadowingField f(sim::RngStream("shadowing/moments", 1000 + i), 4.0, 50.0);
    const double v = f.advance(0.0);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / n;
  const double stddev = std::sqrt(sq / n - mean * mean);
  CHECK(mean == doctest::Approx(0.0).epsilon(1.0).scale(0.2));
  CHECK(stddev == doctest::Approx(4.0).epsilon(0.05));

  // zero displacement keeps the value; large displacement decorrelates
  ShadowingField g(sim::RngStream("shadowing/corr", 2), 4.0, 50.0);
  const double v0 = g.advance(10.0);
  CHECK(g.advance(0.0) == doctest::Approx(v0));

  // determinism
  ShadowingField h1(sim::RngStream("shadowing/rep", 3), 4.0, 50.0);
  ShadowingField h2(sim::RngStream("shadowing/rep", 3), 4.0, 50.0);
  for (int i = 0; i < 20; ++i) {
    CHECK(h1.advance(15.0) == doctest::Approx(h2.advance(15.0)));
  }
}

TEST_CASE("route addressing and mobility") {
  Route route({{0.0, 0.0}, {100.0, 0.0}, {100.0, 50.0}});
  CHECK(route.length_m() == doctest::Approx(150.0));
  CHECK(route.at_offset(50.0).x == doctest::Approx(50.0));
  CHECK(route.at_offset(125.0).x == doctest::Approx(100.0));
  CHECK(route.at_offset(125.0).y == doctest::Approx(25.0));
  // past the end pins to the last waypoint
  CHECK(route.at_offset(500.0).y == doctest::Approx(50.0));

  MobilityModel m(Route({{0.0, 0.0}, {3000.0, 0.0}}), 15.0);
  CHECK(m.position_at(SimTime{0}).x == doctest::Approx(0.0));
  CHECK(m.position_at(SimTime{10'000}).x == doctest::Approx(150.0));
  CHECK(m.offset_at(SimTime{10'000}) == doctest::Approx(150.0));
  CHECK(m.position_at(SimTime{400'000}).x == doctest::Approx(3000.0));
}

TEST_CASE("make_report sorts entries and derives sinr/cqi") {
  const double noise = -87.0;
  auto report = make_report(4, SimTime{7000}, 2,
                            {{3, -95.0}, {1, -92.0}, {2, -80.0}}, noise);
  CHECK(report.ue == 4);
  CHECK(report.t == SimTime{7000});
  CHECK(report.serving == 2);
  REQUIRE(report.entries.size() == 3);
  CHECK(report.entries[0].first == 1);
  CHECK(report.entries[2].first == 3);
  CHECK(report.rsrp_of(2) == doctest::Approx(-80.0));
  const auto mw = [](double dbm) { return std::pow(10.0, dbm / 10.0); };
  const double expected =
      10.0 * std::log10(mw(-80.0) / (mw(-92.0) + mw(-95.0) + mw(noise)));
  CHECK(report.sinr_db == doctest::Approx(expected));
  CHECK(report.cqi == cqi_from_sinr(expected));
}

namespace {

RadioTrace make_trace(const RadioParams& params, std::uint64_t seed = 11,
                      sim::SimTime duration = sim::SimTime{60'000}) {
  std::vector<CellConfig> cells(2);
  cells[0].id = 1;
  cells[0].position = {500.0, 35.0};
  cells[1].id = 2;
  cells[1].position = {1500.0, 35.0};
  MobilityModel mobility(Route({{0.0, 0.0}, {3000.0, 0.0}}), 15.0);
  return RadioTrace(cells, mobility, 1, seed, params, sim::SimTime{1000},
                    duration);
}

}  // namespace

TEST_CASE("radio trace grid and rows") {
  const RadioTrace trace = make_trace(RadioParams{});
  CHECK(trace.rows() == 61);
  CHECK(trace.time_of_row(0) == SimTime{0});
  CHECK(trace.time_of_row(60) == SimTime{60'000});
  CHECK(trace.row_at(SimTime{0}) == 0);
  CHECK(trace.row_at(SimTime{999}) == 0);
  CHECK(trace.row_at(SimTime{1000}) == 1);
  CHECK(trace.row_at(SimTime{59'500}) == 59);
  CHECK(trace.cell_index(1).has_value());
  CHECK_FALSE(trace.cell_index(9).has_value());
  CHECK(trace.noise_dbm() == doctest::Approx(-87.0));
}

TEST_CASE("trace without shadowing follows the deterministic channel") {
  RadioParams params;
  params.shadowing_enabled = false;
  params.filter_k = 0.0;
  const RadioTrace trace = make_trace(params);
  CellConfig cell;
  cell.id = 1;
  cell.position = {500.0, 35.0};
  // row 10: ue at x = 150
  const double expected = rsrp_dbm(cell, {150.0, 0.0}, 0.0);
  CHECK(trace.rsrp(10, 0) == doctest::Approx(expected));
  // same seed reproduces bit-identically
  const RadioTrace again = make_trace(params);
  for (std::size_t r = 0; r < trace.rows(); ++r) {
    CHECK(trace.rsrp(r, 0) == again.rsrp(r, 0));
    CHECK(trace.rsrp(r, 1) == again.rsrp(r, 1));
  }
}

TEST_CASE("measurement filter recursion") {
  RadioParams params;
  params.filter_k = 8.0;  // a = 0.25
  const double a = std::pow(2.0, -params.filter_k / 4.0);
  const RadioTrace trace = make_trace(params);

  SUBCASE("first row is unfiltered") {
    CHECK(trace.rsrp_meas(0, 0) == doctest::Approx(trace.rsrp(0, 0)));
    CHECK(trace.rsrp_meas(0, 1) == doctest::Approx(trace.rsrp(0, 1)));
  }

  SUBCASE("recursion matches the definition") {
    for (std::size_t c = 0; c < 2; ++c) {
      double m = trace.rsrp(0, c);
      for (std::size_t r = 1; r < trace.rows(); ++r) {
        m = (1.0 - a) * m + a * trace.rsrp(r, c);
        CHECK(trace.rsrp_meas(r, c) == doctest::Approx(m).epsilon(1e-12));
      }
    }
  }

  SUBCASE("k = 0 disables smoothing") {
    RadioParams raw = params;
    raw.filter_k = 0.0;
    const RadioTrace t2 = make_trace(raw);
    for (std::size_t r = 0; r < t2.rows(); ++r) {
      CHECK(t2.rsrp_meas(r, 0) == doctest::Approx(t2.rsrp(r, 0)));
    }
  }

  SUBCASE("clamped future lookup pins to the last row") {
    const std::size_t last = trace.rows() - 1;
    CHECK(trace.rsrp_meas_clamped(last + 5, 0) ==
          doctest::Approx(trace.rsrp_meas(last, 0)));
    CHECK(trace.rsrp_meas_clamped(3, 1) ==
          doctest::Approx(trace.rsrp_meas(3, 1)));
  }
}

TEST_CASE("filter step response converges at rate 1-(1-a)^n") {
  // constant input: filtered value equals it at every step
  const double a = std::pow(2.0, -8.0 / 4.0);
  double m = -90.0;
  for (int n = 1; n <= 20; ++n) {
    m = (1.0 - a) * m + a * -90.0;
    CHECK(m == doctest::Approx(-90.0));
  }
  // step 0 -> 1 reaches 1-(1-a)^n
  m = 0.0;
  for (int n = 1; n <= 10; ++n) {
    m = (1.0 - a) * m + a * 1.0;
    CHECK(m == doctest::Approx(1.0 - std::pow(1.0 - a, n)).epsilon(1e-12));
  }
}

TEST_CASE("reports carry the filtered series, the link sees the raw one") {
  RadioParams params;
  params.filter_k = 8.0;
  const RadioTrace trace = make_trace(params);
  const std::size_t row = 20;

  const auto report = trace.report_at(row, 1, 1);
  CHECK(report.rsrp_of(1) == doctest::Approx(trace.rsrp_meas(row, 0)));
  CHECK(report.rsrp_of(2) == doctest::Approx(trace.rsrp_meas(row, 1)));

  const auto mw = [](double dbm) { return std::pow(10.0, dbm / 10.0); };
  const double raw_sinr =
      10.0 * std::log10(mw(trace.rsrp(row, 0)) /
                        (mw(trace.rsrp(row, 1)) + mw(trace.noise_dbm())));
  CHECK(trace.link_cqi(row, 1) == cqi_from_sinr(raw_sinr));
}

TEST_CASE("strongest cell by the measurement series") {
  RadioParams params;
  params.shadowing_enabled = false;
  const RadioTrace trace = make_trace(params, 11, sim::SimTime{120'000});
  CHECK(trace.strongest_cell(0) == 1);    // ue at x=0
  CHECK(trace.strongest_cell(120) == 2);  // ue at x=1800
}
