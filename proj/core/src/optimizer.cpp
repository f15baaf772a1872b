#include "oransim/nn/optimizer.hpp"

#include <cmath>

namespace oransim::nn {

void AdamOptimizer::step(const std::vector<TensorRef>& tensors) {
  if (m_.empty()) {
    m_.resize(tensors.size());
    v_.resize(tensors.size());
    for (std::size_t i = 0; i < tensors.size(); ++i) {
      m_[i].assign(tensors[i].w->size(), 0.0);
      v_[i].assign(tensors[i].w->size(), 0.0);
    }
  }
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    double* w = tensors[i].w->a.data();
    const double* g = tensors[i].g->a.data();
    double* m = m_[i].data();
    double* v = v_[i].data();
    const std::size_t n = tensors[i].w->size();
    for (std::size_t k = 0; k < n; ++k) {
      m[k] = beta1_ * m[k] + (1.0 - beta1_) * g[k];
      v[k] = beta2_ * v[k] + (1.0 - beta2_) * g[k] * g[k];
      const double mhat = m[k] / c1;
      const double vhat = v[k] / c2;
      w[k] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
    }
  }
}

void RmsPropOptimizer::step(const std::vector<TensorRef>& tensors) {
  if (v_.empty()) {
    v_.resize(tensors.size());
    for (std::size_t i = 0; i < tensors.size(); ++i) {
      v_[i].assign(tensors[i].w->size(), 0.0);
    }
  }
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    double* w = tensors[i].w->a.data();
    const double* g = tensors[i].g->a.data();
    double* v = v_[i].data();
    const std::size_t n = tensors[i].w->size();
    for (std::size_t k = 0; k < n; ++k) {
      v[k] = rho_ * v[k] + (1.0 - rho_) * g[k] * g[k];
      w[k] -= lr_ * g[k] / (std::sqrt(v[k]) + eps_);
    }
  }
}

}  // namespace oransim::nn
