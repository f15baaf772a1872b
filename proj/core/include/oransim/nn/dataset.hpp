#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oransim/radio/types.hpp"
#include "oransim/sim/time.hpp"

namespace oransim::nn {

struct RsrpSeries {
  radio::UeId ue = 0;
  radio::CellId cell = 0;
  std::vector<std::pair<sim::SimTime, double>> samples;  // ascending t
};

/// Loads `t_ms,ue_id,cell_id,rsrp_dbm[,...]` (extra columns ignored) into
/// per-(ue, cell) series ordered by (ue, cell, t). Throws DataError on a
/// missing file, wrong header, or a malformed row.
std::vector<RsrpSeries> load_rsrp_csv(const std::string& path);

/// Value columns only, in the series order of the input.
std::vector<std::vector<double>> series_values(
    const std::vector<RsrpSeries>& series);

}  // namespace oransim::nn
