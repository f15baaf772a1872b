#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "oransim/nn/mat.hpp"
#include "oransim/sim/rng.hpp"

namespace oransim::nn {

struct TensorRef {
  Mat* w;
  Mat* g;
};

struct GruParams {
  int input = 0;
  int units = 0;
  Mat wz, wr, wh;  // input x units
  Mat uz, ur, uh;  // units x units
  Mat bz, br, bh;  // 1 x units
};

struct LstmParams {
  int input = 0;
  int units = 0;
  Mat wi, wf, wg, wo;
  Mat ui, uf, ug, uo;
  Mat bi, bf, bg, bo;
};

GruParams make_gru_params(int input, int units);
LstmParams make_lstm_params(int input, int units);

/// uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)) on the weight matrices, biases
/// zero. fan_in is each matrix's input dimension.
void init_params(GruParams& p, sim::RngStream& rng);
void init_params(LstmParams& p, sim::RngStream& rng);

/// One step: h' = (1-z) (*) h + z (*) hcand, z = sig(Wz x + Uz h + bz),
/// r = sig(Wr x + Ur h + br), hcand = tanh(Wh x + Uh (r (*) h) + bh).
/// Throws ModelError on shape mismatch.
std::vector<double> gru_cell(const GruParams& p, const std::vector<double>& x,
                             const std::vector<double>& h);

struct LstmCellOut {
  std::vector<double> h;
  std::vector<double> c;
};

/// One step: c' = f (*) c + i (*) g, h' = o (*) tanh(c'); i, f, o
/// sigmoid-gated, g tanh. Throws ModelError on shape mismatch.
LstmCellOut lstm_cell(const LstmParams& p, const std::vector<double>& x,
                      const std::vector<double>& h, const std::vector<double>& c);

/// Sequence layer: forward maps T input mats (batch x in) to T output mats,
/// backward consumes the output gradients in reverse and accumulates
/// parameter gradients.
class Layer {
 public:
  virtual ~Layer() = default;
  virtual int out_dim() const = 0;
  virtual void forward(const std::vector<Mat>& xs, std::vector<Mat>& ys,
                       bool training, sim::RngStream* rng) = 0;
  virtual void backward(const std::vector<Mat>& dys, std::vector<Mat>& dxs) = 0;
  virtual void tensors(std::vector<TensorRef>& out) = 0;
  virtual void init(sim::RngStream& rng) = 0;
};

class GruLayer final : public Layer {
 public:
  GruLayer(int input, int units);

  int out_dim() const override { return p_.units; }
  void forward(const std::vector<Mat>& xs, std::vector<Mat>& ys, bool training,
               sim::RngStream* rng) override;
  void backward(const std::vector<Mat>& dys, std::vector<Mat>& dxs) override;
  void tensors(std::vector<TensorRef>& out) override;
  void init(sim::RngStream& rng) override { init_params(p_, rng); }

  GruParams& params() { return p_; }

 private:
  GruParams p_, g_;
  std::vector<Mat> xs_, h_prev_, z_, r_, hc_, rh_;
};

class LstmLayer final : public Layer {
 public:
  LstmLayer(int input, int units);

  int out_dim() const override { return p_.units; }
  void forward(const std::vector<Mat>& xs, std::vector<Mat>& ys, bool training,
               sim::RngStream* rng) override;
  void backward(const std::vector<Mat>& dys, std::vector<Mat>& dxs) override;
  void tensors(std::vector<TensorRef>& out) override;
  void init(sim::RngStream& rng) override { init_params(p_, rng); }

  LstmParams& params() { return p_; }

 private:
  LstmParams p_, g_;
  std::vector<Mat> xs_, h_prev_, c_prev_, i_, f_, g2_, o_, tanh_c_;
};

/// Inverted dropout, fresh mask per step and element while training,
/// identity at inference. Masks can be frozen so a finite-difference pass
/// sees the same network twice.
class DropoutLayer final : public Layer {
 public:
  DropoutLayer(int dim, double rate);

  int out_dim() const override { return dim_; }
  void forward(const std::vector<Mat>& xs, std::vector<Mat>& ys, bool training,
               sim::RngStream* rng) override;
  void backward(const std::vector<Mat>& dys, std::vector<Mat>& dxs) override;
  void tensors(std::vector<TensorRef>&) override {}
  void init(sim::RngStream&) override {}

  void freeze_masks(bool frozen) { frozen_ = frozen; }
  double rate() const { return rate_; }

 private:
  int dim_;
  double rate_;
  bool frozen_ = false;
  bool active_ = false;  // last forward applied masks
  std::vector<Mat> masks_;
};

enum class Activation { relu, linear };

/// Output head on the final hidden state: y = act(h W + b), out dim 1.
class DenseHead {
 public:
  DenseHead(int input, Activation act);

  void forward(const Mat& h_last, Mat& y);
  void backward(const Mat& dy, Mat& dh_last);
  void tensors(std::vector<TensorRef>& out);
  void init(sim::RngStream& rng);

  Mat& weight() { return w_; }
  Mat& bias() { return b_; }

 private:
  Activation act_;
  Mat w_, b_, gw_, gb_;
  Mat h_last_, pre_;
};

}  // namespace oransim::nn
