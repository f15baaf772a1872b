#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "oransim/nn/layers.hpp"

namespace oransim::nn {

enum class Arch { gru, lstm };
enum class OptimizerKind { adam, rmsprop };

/// Hyperparameter tuple. Layer shapes default to the reference stacks
/// (gru: 128 -> dense 1; lstm: 64 -> dropout -> 32 -> dropout -> dense 1)
/// and stay overridable for desk-scale tests.
struct ModelConfig {
  Arch arch = Arch::gru;
  int lookback = 15;
  Activation activation = Activation::relu;
  OptimizerKind optimizer = OptimizerKind::adam;
  double learning_rate = 1e-4;
  int batch_size = 16;
  int epochs = 200;
  int gru_units = 128;
  int lstm_units1 = 64;
  int lstm_units2 = 32;
  double dropout_rate = 0.2;
};

/// Throws ConfigError on an invalid combination.
void validate(const ModelConfig& config);

const char* arch_name(Arch a);
const char* activation_name(Activation a);
const char* optimizer_name(OptimizerKind o);

/// Min-max map onto [0,1]. Fitting a constant series widens max by one so
/// the denominator never vanishes.
struct Scaler {
  double min = 0.0;
  double max = 1.0;

  double normalize(double x) const { return (x - min) / (max - min); }
  double denormalize(double y) const { return y * (max - min) + min; }
  /// Normalize then clamp into [0,1]; inference inputs pass through this.
  double normalize_clamped(double x) const;

  static Scaler fit(std::span<const double> values);
};

/// Recurrent forecaster: layer stack plus dense head plus the scaler it was
/// trained with. Inference is a pure function of (weights, window).
class RecurrentModel {
 public:
  RecurrentModel(ModelConfig config, std::uint64_t init_seed);

  const ModelConfig& config() const { return config_; }
  Scaler& scaler() { return scaler_; }
  const Scaler& scaler() const { return scaler_; }

  Mat forward_batch(const std::vector<Mat>& xs, bool training,
                    sim::RngStream* rng);
  void backward_batch(const Mat& dpred);
  void zero_grads();
  std::vector<TensorRef> tensors();

  /// Single normalized window (length lookback) -> normalized one-step
  /// increment, dropout off.
  double forward(const std::vector<double>& window_normalized);

  /// dBm window -> dBm prediction of the next sample (normalizes, forwards,
  /// adds the last sample, denormalizes).
  double predict_dbm(const std::vector<double>& window_dbm);

  /// Recursive n-step forecast from a dBm history (>= lookback samples).
  /// Each prediction is fed back clamped to the scaler range.
  std::vector<double> predict_recursive(const std::vector<double>& history_dbm,
                                        std::size_t n);

  void save(const std::string& path) const;
  static RecurrentModel load(const std::string& path);

  /// Test hook: pin dropout masks so repeated forwards see one network.
  void freeze_dropout(bool frozen);

  Layer& layer(std::size_t i) { return *stack_[i]; }
  std::size_t layer_count() const { return stack_.size(); }
  DenseHead& head() { return head_; }

 private:
  ModelConfig config_;
  Scaler scaler_;
  std::vector<std::unique_ptr<Layer>> stack_;
  DenseHead head_;
  std::vector<std::vector<Mat>> seq_bufs_;
  std::size_t steps_ = 0;
  int batch_ = 0;
};

}  // namespace oransim::nn
