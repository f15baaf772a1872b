#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oransim/nn/model.hpp"
#include "oransim/nn/optimizer.hpp"

namespace oransim::nn {

struct TrainOptions {
  std::uint64_t seed = 1;
  int patience = 20;  // early stop after this many epochs without val MSE gain
  /// Stop as soon as validation MAE drops below this (checked per epoch).
  std::optional<double> stop_at_val_mae;
};

/// Per-epoch curves. Wall time is advisory output only and never lands in a
/// serialized artifact, so artifacts stay byte-reproducible.
struct TrainReport {
  std::vector<double> train_mse, train_mae, val_mse, val_mae;
  int best_epoch = -1;  // index into the curves
  int epochs_run = 0;
  double wall_seconds = 0.0;
};

struct TrainResult {
  RecurrentModel model;
  TrainReport report;
};

/// Supervised one-step-ahead windows in normalized space. The target is the
/// increment over the window's last sample; levels are reconstructed by the
/// predict paths.
struct WindowSet {
  int lookback = 0;
  std::vector<std::vector<double>> windows;
  std::vector<double> targets;
};

/// Chronological 80/20 split per series: targets in the first 80% train,
/// the rest validate (validation windows may reach back across the split).
/// The scaler is fitted on the train portions only.
struct PreparedData {
  Scaler scaler;
  WindowSet train;
  WindowSet val;
};

PreparedData prepare_windows(const std::vector<std::vector<double>>& series,
                             int lookback);

/// Trains with minibatch BPTT, dropout active, best-validation-MSE weights
/// restored at the end. Deterministic for a fixed (config, data, options).
TrainResult train(const ModelConfig& config,
                  const std::vector<std::vector<double>>& series_dbm,
                  const TrainOptions& options);

struct GridEntry {
  ModelConfig config;
  double val_mse = 0.0;
  double val_mae = 0.0;
  int best_epoch = -1;
  int epochs_run = 0;
};

struct GridOptions {
  std::uint64_t seed = 1;
  int epochs = 50;
  int patience = 20;
  /// Evaluate only the first `budget` configs of the fixed enumeration.
  std::optional<int> budget;
  int jobs = 1;
};

/// Fixed enumeration: lookback {10,15} x optimizer {rmsprop,adam} x
/// activation {relu,linear} x batch {16,32,64} x lr {1e-4,5e-4,1e-3,5e-3}.
std::vector<ModelConfig> grid_space(Arch arch);

/// Trains every (budgeted) config and ranks by validation MSE, then MAE,
/// then enumeration order. `jobs` > 1 trains configs in parallel without
/// changing any result.
std::vector<GridEntry> grid_search(Arch arch,
                                   const std::vector<std::vector<double>>& series_dbm,
                                   const GridOptions& options);

std::string format_grid_csv(const std::vector<GridEntry>& entries);

}  // namespace oransim::nn
