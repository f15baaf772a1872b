#include "oransim/radio/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oransim/errors.hpp"

namespace oransim::radio {

double MeasurementReport::rsrp_of(CellId cell) const {
  for (const auto& [id, rsrp] : entries) {
    if (id == cell) return rsrp;
  }
  return -1e9;
}

MeasurementReport make_report(UeId ue, sim::SimTime t, CellId serving,
                              std::vector<std::pair<CellId, double>> entries,
                              double noise_dbm) {
  if (entries.empty()) throw ConfigError("make_report: no cells");
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  MeasurementReport report;
  report.ue = ue;
  report.t = t;
  report.serving = serving;
  report.sinr_db = sinr_db(entries, serving, noise_dbm);
  report.cqi = cqi_from_sinr(report.sinr_db);
  report.entries = std::move(entries);
  return report;
}

RadioTrace::RadioTrace(const std::vector<CellConfig>& cells,
                       const MobilityModel& mobility, UeId ue,
                       std::uint64_t seed, const RadioParams& params,
                       sim::SimTime report_period, sim::SimTime duration)
    : cells_(cells), period_(report_period) {
  if (cells_.empty()) throw ConfigError("radio trace: no cells");
  if (report_period.ms <= 0) throw ConfigError("radio trace: period must be positive");
  std::sort(cells_.begin(), cells_.end(),
            [](const CellConfig& a, const CellConfig& b) { return a.id < b.id; });
  noise_dbm_ = noise_floor_dbm(cells_.front().bandwidth_mhz, params.noise_figure_db);

  std::vector<ShadowingField> fields;
  fields.reserve(cells_.size());
  for (const auto& cell : cells_) {
    const std::string label = "shadowing/ue" + std::to_string(ue) + "/cell" +
                              std::to_string(cell.id);
    fields.emplace_back(sim::RngStream(label, seed), params.shadowing_sigma_db,
                        params.decorrelation_m);
  }

  const std::size_t n_rows =
      static_cast<std::size_t>(duration.ms / report_period.ms) + 1;
  rsrp_.reserve(n_rows);
  double prev_offset = 0.0;
  for (std::size_t k = 0; k < n_rows; ++k) {
    const sim::SimTime t{static_cast<std::int64_t>(k) * report_period.ms};
    const Point pos = mobility.position_at(t);
    const double offset = mobility.offset_at(t);
    const double delta = offset - prev_offset;
    prev_offset = offset;
    std::vector<double> row(cells_.size());
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      const double shadow =
          params.shadowing_enabled ? fields[c].advance(delta) : 0.0;
      row[c] = rsrp_dbm(cells_[c], pos, shadow);
    }
    rsrp_.push_back(std::move(row));
  }

  const double a = std::pow(2.0, -params.filter_k / 4.0);
  meas_ = rsrp_;
  for (std::size_t k = 1; k < meas_.size(); ++k) {
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      meas_[k][c] = (1.0 - a) * meas_[k - 1][c] + a * rsrp_[k][c];
    }
  }
}

sim::SimTime RadioTrace::time_of_row(std::size_t k) const {
  return sim::SimTime{static_cast<std::int64_t>(k) * period_.ms};
}

std::size_t RadioTrace::row_at(sim::SimTime t) const {
  if (t.ms <= 0) return 0;
  const std::size_t k = static_cast<std::size_t>(t.ms / period_.ms);
  return std::min(k, rsrp_.size() - 1);
}

std::optional<std::size_t> RadioTrace::cell_index(CellId id) const {
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (cells_[c].id == id) return c;
  }
  return std::nullopt;
}

double RadioTrace::rsrp_meas_clamped(std::size_t row, std::size_t cell_idx) const {
  return meas_[std::min(row, meas_.size() - 1)][cell_idx];
}

int RadioTrace::link_cqi(std::size_t row, CellId serving) const {
  std::vector<std::pair<CellId, double>> entries;
  entries.reserve(cells_.size());
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    entries.emplace_back(cells_[c].id, rsrp_[row][c]);
  }
  return cqi_from_sinr(sinr_db(entries, serving, noise_dbm_));
}

CellId RadioTrace::strongest_cell(std::size_t row) const {
  std::size_t best = 0;
  for (std::size_t c = 1; c < cells_.size(); ++c) {
    if (rsrp_[row][c] > rsrp_[row][best]) best = c;
  }
  return cells_[best].id;
}

MeasurementReport RadioTrace::report_at(std::size_t row, CellId serving,
                                        UeId ue) const {
  std::vector<std::pair<CellId, double>> entries;
  entries.reserve(cells_.size());
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    entries.emplace_back(cells_[c].id, meas_[row][c]);
  }
  return make_report(ue, time_of_row(row), serving, std::move(entries),
                     noise_dbm_);
}

}  // namespace oransim::radio
