#include "oransim/xapps/predictor.hpp"

#include <string>

#include "oransim/errors.hpp"

namespace oransim::xapps {

void OraclePredictor::add_trace(radio::UeId ue, const radio::RadioTrace* trace) {
  traces_[ue] = trace;
}

std::vector<double> OraclePredictor::forecast(
    radio::UeId ue, radio::CellId cell,
    const std::vector<ric::SdlStore::Sample>& history, std::size_t steps) {
  const auto it = traces_.find(ue);
  if (it == traces_.end()) {
    throw ModelError("no trace for ue " + std::to_string(ue));
  }
  const radio::RadioTrace& trace = *it->second;
  const auto cell_idx = trace.cell_index(cell);
  if (!cell_idx) {
    throw ModelError("no trace column for cell " + std::to_string(cell));
  }
  if (history.empty()) {
    throw ModelError("empty history");
  }
  const std::size_t row = trace.row_at(history.back().t);
  std::vector<double> out;
  out.reserve(steps);
  for (std::size_t k = 1; k <= steps; ++k) {
    out.push_back(trace.rsrp_meas_clamped(row + k, *cell_idx));
  }
  return out;
}

}  // namespace oransim::xapps
