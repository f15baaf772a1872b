#include "oransim/xapps/kpm_monitor.hpp"

namespace oransim::xapps {

void KpmMonitor::on_indication(const radio::MeasurementReport& report) {
  for (const auto& [cell, rsrp] : report.entries) {
    if (sdl_.put(report.ue, cell, report.t, rsrp)) {
      ++stored_;
    } else {
      ++dropped_;
    }
  }
  sdl_.set_latest(report);
}

}  // namespace oransim::xapps
