#pragma once

#include <memory>

#include "oransim/nn/model.hpp"
#include "oransim/xapps/predictor.hpp"

namespace oransim::nn {

/// Predictor backend over one trained model, shared by every (ue, cell)
/// series, rolled forward recursively.
class ModelPredictor final : public xapps::Predictor {
 public:
  explicit ModelPredictor(std::shared_ptr<RecurrentModel> model)
      : model_(std::move(model)) {}

  std::size_t lookback() const override {
    return static_cast<std::size_t>(model_->config().lookback);
  }

  std::vector<double> forecast(radio::UeId, radio::CellId,
                               const std::vector<ric::SdlStore::Sample>& history,
                               std::size_t steps) override {
    std::vector<double> values;
    values.reserve(history.size());
    for (const auto& s : history) values.push_back(s.rsrp_dbm);
    return model_->predict_recursive(values, steps);
  }

 private:
  std::shared_ptr<RecurrentModel> model_;
};

}  // namespace oransim::nn
