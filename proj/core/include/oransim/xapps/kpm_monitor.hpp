#pragma once

#include <cstdint>

#include "oransim/radio/types.hpp"
#include "oransim/ric/sdl.hpp"

namespace oransim::xapps {

/// Ingest xApp: fans a measurement report out into the SDL, one put per
/// (ue, cell) entry, and refreshes the per-UE latest report. Out-of-order
/// samples are dropped and counted, never fatal.
class KpmMonitor {
 public:
  explicit KpmMonitor(ric::SdlStore& sdl) : sdl_(sdl) {}

  void on_indication(const radio::MeasurementReport& report);

  std::uint64_t dropped() const { return dropped_; }
  std::uint64_t stored() const { return stored_; }

 private:
  ric::SdlStore& sdl_;
  std::uint64_t dropped_ = 0;
  std::uint64_t stored_ = 0;
};

}  // namespace oransim::xapps
