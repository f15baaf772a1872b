#include "oransim/ric/sdl.hpp"

#include <algorithm>
#include <cstdio>

#include "oransim/errors.hpp"

namespace oransim::ric {

SdlStore::SdlStore(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("sdl capacity must be positive");
}

bool SdlStore::put(radio::UeId ue, radio::CellId cell, sim::SimTime t,
                   double rsrp_dbm) {
  auto& ring = series_[SeriesKey{ue, cell}];
  if (!ring.empty() && t <= ring.back().t) return false;
  ring.push_back(Sample{t, rsrp_dbm});
  if (ring.size() > capacity_) ring.pop_front();
  return true;
}

std::vector<SdlStore::Sample> SdlStore::window(radio::UeId ue,
                                               radio::CellId cell,
                                               std::size_t n) const {
  if (n == 0) throw ConfigError("sdl window size must be >= 1");
  const auto it = series_.find(SeriesKey{ue, cell});
  if (it == series_.end()) return {};
  const auto& ring = it->second;
  const std::size_t take = std::min(n, ring.size());
  return std::vector<Sample>(ring.end() - static_cast<std::ptrdiff_t>(take),
                             ring.end());
}

std::vector<SdlStore::Sample> SdlStore::range_from(radio::UeId ue,
                                                   radio::CellId cell,
                                                   sim::SimTime from) const {
  const auto it = series_.find(SeriesKey{ue, cell});
  if (it == series_.end()) return {};
  const auto& ring = it->second;
  const auto first = std::lower_bound(
      ring.begin(), ring.end(), from,
      [](const Sample& s, sim::SimTime t) { return s.t < t; });
  return std::vector<Sample>(first, ring.end());
}

std::size_t SdlStore::size(radio::UeId ue, radio::CellId cell) const {
  const auto it = series_.find(SeriesKey{ue, cell});
  return it == series_.end() ? 0 : it->second.size();
}

void SdlStore::set_latest(const radio::MeasurementReport& report) {
  latest_[report.ue] = report;
}

const radio::MeasurementReport* SdlStore::latest(radio::UeId ue) const {
  const auto it = latest_.find(ue);
  return it == latest_.end() ? nullptr : &it->second;
}

std::string SdlStore::dump_csv() const {
  std::string out = "ue_id,cell_id,t_ms,rsrp_dbm\n";
  char line[128];
  for (const auto& [key, ring] : series_) {
    for (const Sample& s : ring) {
      std::snprintf(line, sizeof(line), "%u,%u,%lld,%.10g\n", key.first,
                    key.second, static_cast<long long>(s.t.ms), s.rsrp_dbm);
      out += line;
    }
  }
  return out;
}

}  // namespace oransim::ric
