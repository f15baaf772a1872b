#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "oransim/radio/measurement.hpp"
#include "oransim/ric/sdl.hpp"

namespace oransim::xapps {

/// Signal forecaster backend. Implementations either roll a trained model
/// forward recursively or read the simulator's scripted future.
class Predictor {
 public:
  virtual ~Predictor() = default;

  /// Minimum history length forecast() needs.
  virtual std::size_t lookback() const = 0;

  /// Forecast for the next `steps` report periods after the last history
  /// sample, ascending. History is ascending in t with at least lookback()
  /// samples. Throws ModelError on evaluation failure.
  virtual std::vector<double> forecast(
      radio::UeId ue, radio::CellId cell,
      const std::vector<ric::SdlStore::Sample>& history,
      std::size_t steps) = 0;
};

/// Perfect predictor: answers from the precomputed radio trace, so the
/// decision logic can be tested with zero forecast error.
class OraclePredictor : public Predictor {
 public:
  void add_trace(radio::UeId ue, const radio::RadioTrace* trace);

  std::size_t lookback() const override { return 1; }

  std::vector<double> forecast(
      radio::UeId ue, radio::CellId cell,
      const std::vector<ric::SdlStore::Sample>& history,
      std::size_t steps) override;

 private:
  std::map<radio::UeId, const radio::RadioTrace*> traces_;
};

}  // namespace oransim::xapps
