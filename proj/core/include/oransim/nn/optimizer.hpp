#pragma once

#include <cstdint>
#include <vector>

#include "oransim/nn/layers.hpp"

namespace oransim::nn {

class Optimizer {
 public:
  virtual ~Optimizer() = default;
  /// Applies one update from the accumulated gradients. State is lazily
  /// sized to the tensor list on first use and must then see the same list
  /// every call.
  virtual void step(const std::vector<TensorRef>& tensors) = 0;
};

/// theta -= lr * mhat / (sqrt(vhat) + eps), bias-corrected first and second
/// moments.
class AdamOptimizer final : public Optimizer {
 public:
  explicit AdamOptimizer(double lr, double beta1 = 0.9, double beta2 = 0.999,
                         double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void step(const std::vector<TensorRef>& tensors) override;

 private:
  double lr_, beta1_, beta2_, eps_;
  std::uint64_t t_ = 0;
  std::vector<std::vector<double>> m_, v_;
};

/// theta -= lr * g / (sqrt(v) + eps), v = rho v + (1 - rho) g^2.
class RmsPropOptimizer final : public Optimizer {
 public:
  explicit RmsPropOptimizer(double lr, double rho = 0.9, double eps = 1e-8)
      : lr_(lr), rho_(rho), eps_(eps) {}

  void step(const std::vector<TensorRef>& tensors) override;

 private:
  double lr_, rho_, eps_;
  std::vector<std::vector<double>> v_;
};

}  // namespace oransim::nn
