#include "oransim/nn/layers.hpp"

#include <cmath>

#include "oransim/errors.hpp"

namespace oransim::nn {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void map_sigmoid(Mat& m) {
  for (double& v : m.a) v = sigmoid(v);
}

void map_tanh(Mat& m) {
  for (double& v : m.a) v = std::tanh(v);
}

void init_uniform(Mat& m, int fan_in, sim::RngStream& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  for (double& v : m.a) v = rng.uniform() * 2.0 * bound - bound;
}

Mat to_row(const std::vector<double>& v) {
  Mat m(1, static_cast<int>(v.size()));
  m.a = v;
  return m;
}

}  // namespace

GruParams make_gru_params(int input, int units) {
  GruParams p;
  p.input = input;
  p.units = units;
  p.wz = Mat(input, units);
  p.wr = Mat(input, units);
  p.wh = Mat(input, units);
  p.uz = Mat(units, units);
  p.ur = Mat(units, units);
  p.uh = Mat(units, units);
  p.bz = Mat(1, units);
  p.br = Mat(1, units);
  p.bh = Mat(1, units);
  return p;
}

LstmParams make_lstm_params(int input, int units) {
  LstmParams p;
  p.input = input;
  p.units = units;
  p.wi = Mat(input, units);
  p.wf = Mat(input, units);
  p.wg = Mat(input, units);
  p.wo = Mat(input, units);
  p.ui = Mat(units, units);
  p.uf = Mat(units, units);
  p.ug = Mat(units, units);
  p.uo = Mat(units, units);
  p.bi = Mat(1, units);
  p.bf = Mat(1, units);
  p.bg = Mat(1, units);
  p.bo = Mat(1, units);
  return p;
}

void init_params(GruParams& p, sim::RngStream& rng) {
  init_uniform(p.wz, p.input, rng);
  init_uniform(p.wr, p.input, rng);
  init_uniform(p.wh, p.input, rng);
  init_uniform(p.uz, p.units, rng);
  init_uniform(p.ur, p.units, rng);
  init_uniform(p.uh, p.units, rng);
}

void init_params(LstmParams& p, sim::RngStream& rng) {
  init_uniform(p.wi, p.input, rng);
  init_uniform(p.wf, p.input, rng);
  init_uniform(p.wg, p.input, rng);
  init_uniform(p.wo, p.input, rng);
  init_uniform(p.ui, p.units, rng);
  init_uniform(p.uf, p.units, rng);
  init_uniform(p.ug, p.units, rng);
  init_uniform(p.uo, p.units, rng);
}

std::vector<double> gru_cell(const GruParams& p, const std::vector<double>& x,
                             const std::vector<double>& h) {
  if (static_cast<int>(x.size()) != p.input ||
      static_cast<int>(h.size()) != p.units) {
    throw ModelError("gru_cell shape mismatch");
  }
  const Mat xm = to_row(x);
  const Mat hm = to_row(h);

  Mat z = p.bz, r = p.br;
  gemm_nn(xm, p.wz, z);
  gemm_nn(hm, p.uz, z);
  map_sigmoid(z);
  gemm_nn(xm, p.wr, r);
  gemm_nn(hm, p.ur, r);
  map_sigmoid(r);

  Mat rh(1, p.units);
  for (int j = 0; j < p.units; ++j) rh.at(0, j) = r.at(0, j) * h[j];
  Mat hc = p.bh;
  gemm_nn(xm, p.wh, hc);
  gemm_nn(rh, p.uh, hc);
  map_tanh(hc);

  std::vector<double> out(p.units);
  for (int j = 0; j < p.units; ++j) {
    out[j] = (1.0 - z.at(0, j)) * h[j] + z.at(0, j) * hc.at(0, j);
  }
  return out;
}

LstmCellOut lstm_cell(const LstmParams& p, const std::vector<double>& x,
                      const std::vector<double>& h,
                      const std::vector<double>& c) {
  if (static_cast<int>(x.size()) != p.input ||
      static_cast<int>(h.size()) != p.units ||
      static_cast<int>(c.size()) != p.units) {
    throw ModelError("lstm_cell shape mismatch");
  }
  const Mat xm = to_row(x);
  const Mat hm = to_row(h);

  Mat ig = p.bi, fg = p.bf, gg = p.bg, og = p.bo;
  gemm_nn(xm, p.wi, ig);
  gemm_nn(hm, p.ui, ig);
  map_sigmoid(ig);
  gemm_nn(xm, p.wf, fg);
  gemm_nn(hm, p.uf, fg);
  map_sigmoid(fg);
  gemm_nn(xm, p.wg, gg);
  gemm_nn(hm, p.ug, gg);
  map_tanh(gg);
  gemm_nn(xm, p.wo, og);
  gemm_nn(hm, p.uo, og);
  map_sigmoid(og);

  LstmCellOut out;
  out.c.resize(p.units);
  out.h.resize(p.units);
  for (int j = 0; j < p.units; ++j) {
    out.c[j] = fg.at(0, j) * c[j] + ig.at(0, j) * gg.at(0, j);
    out.h[j] = og.at(0, j) * std::tanh(out.c[j]);
  }
  return out;
}

GruLayer::GruLayer(int input, int units)
    : p_(make_gru_params(input, units)), g_(make_gru_params(input, units)) {}

void GruLayer::tensors(std::vector<TensorRef>& out) {
  out.push_back({&p_.wz, &g_.wz});
  out.push_back({&p_.wr, &g_.wr});
  out.push_back({&p_.wh, &g_.wh});
  out.push_back({&p_.uz, &g_.uz});
  out.push_back({&p_.ur, &g_.ur});
  out.push_back({&p_.uh, &g_.uh});
  out.push_back({&p_.bz, &g_.bz});
  out.push_back({&p_.br, &g_.br});
  out.push_back({&p_.bh, &g_.bh});
}

void GruLayer::forward(const std::vector<Mat>& xs, std::vector<Mat>& ys,
                       bool, sim::RngStream*) {
  const std::size_t steps = xs.size();
  const int batch = steps ? xs[0].rows : 0;
  xs_ = xs;
  h_prev_.assign(steps, Mat());
  z_.assign(steps, Mat());
  r_.assign(steps, Mat());
  hc_.assign(steps, Mat());
  rh_.assign(steps, Mat());
  ys.assign(steps, Mat());

  Mat h(batch, p_.units);
  for (std::size_t t = 0; t < steps; ++t) {
    h_prev_[t] = h;

    Mat z(batch, p_.units), r(batch, p_.units);
    add_bias_rows(z, p_.bz);
    gemm_nn(xs[t], p_.wz, z);
    gemm_nn(h, p_.uz, z);
    map_sigmoid(z);
    add_bias_rows(r, p_.br);
    gemm_nn(xs[t], p_.wr, r);
    gemm_nn(h, p_.ur, r);
    map_sigmoid(r);

    Mat rh(batch, p_.units);
    for (std::size_t n = 0; n < rh.size(); ++n) rh.a[n] = r.a[n] * h.a[n];

    Mat hc(batch, p_.units);
    add_bias_rows(hc, p_.bh);
    gemm_nn(xs[t], p_.wh, hc);
    gemm_nn(rh, p_.uh, hc);
    map_tanh(hc);

    Mat h_new(batch, p_.units);
    for (std::size_t n = 0; n < h_new.size(); ++n) {
      h_new.a[n] = (1.0 - z.a[n]) * h.a[n] + z.a[n] * hc.a[n];
    }

    z_[t] = std::move(z);
    r_[t] = std::move(r);
    hc_[t] = std::move(hc);
    rh_[t] = std::move(rh);
    h = h_new;
    ys[t] = std::move(h_new);
  }
}

void GruLayer::backward(const std::vector<Mat>& dys, std::vector<Mat>& dxs) {
  const std::size_t steps = dys.size();
  const int batch = steps ? dys[0].rows : 0;
  dxs.assign(steps, Mat());

  Mat dh(batch, p_.units);
  for (std::size_t ti = steps; ti-- > 0;) {
    const std::size_t t = ti;
    for (std::size_t n = 0; n < dh.size(); ++n) dh.a[n] += dys[t].a[n];

    const Mat& h = h_prev_[t];
    const Mat& z = z_[t];
    const Mat& r = r_[t];
    const Mat& hc = hc_[t];

    Mat da_z(batch, p_.units), da_h(batch, p_.units);
    Mat dh_carry(batch, p_.units);
    for (std::size_t n = 0; n < dh.size(); ++n) {
      const double dhn = dh.a[n];
      const double dz = dhn * (hc.a[n] - h.a[n]);
      da_z.a[n] = dz * z.a[n] * (1.0 - z.a[n]);
      const double dhc = dhn * z.a[n];
      da_h.a[n] = dhc * (1.0 - hc.a[n] * hc.a[n]);
      dh_carry.a[n] = dhn * (1.0 - z.a[n]);
    }

    Mat drh(batch, p_.units);
    gemm_nt(da_h, p_.uh, drh);
    Mat da_r(batch, p_.units);
    for (std::size_t n = 0; n < drh.size(); ++n) {
      const double dr = drh.a[n] * h.a[n];
      da_r.a[n] = dr * r.a[n] * (1.0 - r.a[n]);
      dh_carry.a[n] += drh.a[n] * r.a[n];
    }

    gemm_tn(xs_[t], da_z, g_.wz);
    gemm_tn(xs_[t], da_r, g_.wr);
    gemm_tn(xs_[t], da_h, g_.wh);
    gemm_tn(h, da_z, g_.uz);
    gemm_tn(h, da_r, g_.ur);
    gemm_tn(rh_[t], da_h, g_.uh);
    colsum_acc(da_z, g_.bz);
    colsum_acc(da_r, g_.br);
    colsum_acc(da_h, g_.bh);

    Mat dx(batch, p_.input);
    gemm_nt(da_z, p_.wz, dx);
    gemm_nt(da_r, p_.wr, dx);
    gemm_nt(da_h, p_.wh, dx);
    dxs[t] = std::move(dx);

    gemm_nt(da_z, p_.uz, dh_carry);
    gemm_nt(da_r, p_.ur, dh_carry);
    dh = std::move(dh_carry);
  }
}

LstmLayer::LstmLayer(int input, int units)
    : p_(make_lstm_params(input, units)), g_(make_lstm_params(input, units)) {}

void LstmLayer::tensors(std::vector<TensorRef>& out) {
  out.push_back({&p_.wi, &g_.wi});
  out.push_back({&p_.wf, &g_.wf});
  out.push_back({&p_.wg, &g_.wg});
  out.push_back({&p_.wo, &g_.wo});
  out.push_back({&p_.ui, &g_.ui});
  out.push_back({&p_.uf, &g_.uf});
  out.push_back({&p_.ug, &g_.ug});
  out.push_back({&p_.uo, &g_.uo});
  out.push_back({&p_.bi, &g_.bi});
  out.push_back({&p_.bf, &g_.bf});
  out.push_back({&p_.bg, &g_.bg});
  out.push_back({&p_.bo, &g_.bo});
}

void LstmLayer::forward(const std::vector<Mat>& xs, std::vector<Mat>& ys,
                        bool, sim::RngStream*) {
  const std::size_t steps = xs.size();
  const int batch = steps ? xs[0].rows : 0;
  xs_ = xs;
  h_prev_.assign(steps, Mat());
  c_prev_.assign(steps, Mat());
  i_.assign(steps, Mat());
  f_.assign(steps, Mat());
  g2_.assign(steps, Mat());
  o_.assign(steps, Mat());
  tanh_c_.assign(steps, Mat());
  ys.assign(steps, Mat());

  Mat h(batch, p_.units), c(batch, p_.units);
  for (std::size_t t = 0; t < steps; ++t) {
    h_prev_[t] = h;
    c_prev_[t] = c;

    Mat ig(batch, p_.units), fg(batch, p_.units), gg(batch, p_.units),
        og(batch, p_.units);
    add_bias_rows(ig, p_.bi);
    gemm_nn(xs[t], p_.wi, ig);
    gemm_nn(h, p_.ui, ig);
    map_sigmoid(ig);
    add_bias_rows(fg, p_.bf);
    gemm_nn(xs[t], p_.wf, fg);
    gemm_nn(h, p_.uf, fg);
    map_sigmoid(fg);
    add_bias_rows(gg, p_.bg);
    gemm_nn(xs[t], p_.wg, gg);
    gemm_nn(h, p_.ug, gg);
    map_tanh(gg);
    add_bias_rows(og, p_.bo);
    gemm_nn(xs[t], p_.wo, og);
    gemm_nn(h, p_.uo, og);
    map_sigmoid(og);

    Mat c_new(batch, p_.units), tanh_c(batch, p_.units),
        h_new(batch, p_.units);
    for (std::size_t n = 0; n < c_new.size(); ++n) {
      c_new.a[n] = fg.a[n] * c.a[n] + ig.a[n] * gg.a[n];
      tanh_c.a[n] = std::tanh(c_new.a[n]);
      h_new.a[n] = og.a[n] * tanh_c.a[n];
    }

    i_[t] = std::move(ig);
    f_[t] = std::move(fg);
    g2_[t] = std::move(gg);
    o_[t] = std::move(og);
    tanh_c_[t] = std::move(tanh_c);
    c = std::move(c_new);
    h = h_new;
    ys[t] = std::move(h_new);
  }
}

void LstmLayer::backward(const std::vector<Mat>& dys, std::vector<Mat>& dxs) {
  const std::size_t steps = dys.size();
  const int batch = steps ? dys[0].rows : 0;
  dxs.assign(steps, Mat());

  Mat dh(batch, p_.units), dc(batch, p_.units);
  for (std::size_t ti = steps; ti-- > 0;) {
    const std::size_t t = ti;
    for (std::size_t n = 0; n < dh.size(); ++n) dh.a[n] += dys[t].a[n];

    const Mat& ig = i_[t];
    const Mat& fg = f_[t];
    const Mat& gg = g2_[t];
    const Mat& og = o_[t];
    const Mat& tc = tanh_c_[t];

    Mat da_i(batch, p_.units), da_f(batch, p_.units), da_g(batch, p_.units),
        da_o(batch, p_.units);
    Mat dc_carry(batch, p_.units);
    for (std::size_t n = 0; n < dh.size(); ++n) {
      const double dhn = dh.a[n];
      da_o.a[n] = dhn * tc.a[n] * og.a[n] * (1.0 - og.a[n]);
      const double dcn = dc.a[n] + dhn * og.a[n] * (1.0 - tc.a[n] * tc.a[n]);
      da_f.a[n] = dcn * c_prev_[t].a[n] * fg.a[n] * (1.0 - fg.a[n]);
      da_i.a[n] = dcn * gg.a[n] * ig.a[n] * (1.0 - ig.a[n]);
      da_g.a[n] = dcn * ig.a[n] * (1.0 - gg.a[n] * gg.a[n]);
      dc_carry.a[n] = dcn * fg.a[n];
    }

    gemm_tn(xs_[t], da_i, g_.wi);
    gemm_tn(xs_[t], da_f, g_.wf);
    gemm_tn(xs_[t], da_g, g_.wg);
    gemm_tn(xs_[t], da_o, g_.wo);
    gemm_tn(h_prev_[t], da_i, g_.ui);
    gemm_tn(h_prev_[t], da_f, g_.uf);
    gemm_tn(h_prev_[t], da_g, g_.ug);
    gemm_tn(h_prev_[t], da_o, g_.uo);
    colsum_acc(da_i, g_.bi);
    colsum_acc(da_f, g_.bf);
    colsum_acc(da_g, g_.bg);
    colsum_acc(da_o, g_.bo);

    Mat dx(batch, p_.input);
    gemm_nt(da_i, p_.wi, dx);
    gemm_nt(da_f, p_.wf, dx);
    gemm_nt(da_g, p_.wg, dx);
    gemm_nt(da_o, p_.wo, dx);
    dxs[t] = std::move(dx);

    Mat dh_carry(batch, p_.units);
    gemm_nt(da_i, p_.ui, dh_carry);
    gemm_nt(da_f, p_.uf, dh_carry);
    gemm_nt(da_g, p_.ug, dh_carry);
    gemm_nt(da_o, p_.uo, dh_carry);
    dh = std::move(dh_carry);
    dc = std::move(dc_carry);
  }
}

DropoutLayer::DropoutLayer(int dim, double rate) : dim_(dim), rate_(rate) {
  if (rate < 0.0 || rate >= 1.0) throw ConfigError("dropout rate out of range");
}

void DropoutLayer::forward(const std::vector<Mat>& xs, std::vector<Mat>& ys,
                           bool training, sim::RngStream* rng) {
  const std::size_t steps = xs.size();
  ys.assign(steps, Mat());
  active_ = training && rate_ > 0.0;
  if (!active_) {
    for (std::size_t t = 0; t < steps; ++t) ys[t] = xs[t];
    return;
  }
  const bool reuse = frozen_ && masks_.size() == steps &&
                     (steps == 0 || masks_[0].same_shape(xs[0]));
  if (!reuse) {
    if (!rng) throw ConfigError("dropout needs an rng while training");
    const double keep = 1.0 - rate_;
    masks_.assign(steps, Mat());
    for (std::size_t t = 0; t < steps; ++t) {
      masks_[t] = Mat(xs[t].rows, xs[t].cols);
      for (double& m : masks_[t].a) {
        m = rng->uniform() < keep ? 1.0 / keep : 0.0;
      }
    }
  }
  for (std::size_t t = 0; t < steps; ++t) {
    ys[t] = Mat(xs[t].rows, xs[t].cols);
    for (std::size_t n = 0; n < ys[t].size(); ++n) {
      ys[t].a[n] = xs[t].a[n] * masks_[t].a[n];
    }
  }
}

void DropoutLayer::backward(const std::vector<Mat>& dys,
                            std::vector<Mat>& dxs) {
  const std::size_t steps = dys.size();
  dxs.assign(steps, Mat());
  for (std::size_t t = 0; t < steps; ++t) {
    if (!active_) {
      dxs[t] = dys[t];
      continue;
    }
    dxs[t] = Mat(dys[t].rows, dys[t].cols);
    for (std::size_t n = 0; n < dxs[t].size(); ++n) {
      dxs[t].a[n] = dys[t].a[n] * masks_[t].a[n];
    }
  }
}

DenseHead::DenseHead(int input, Activation act)
    : act_(act), w_(input, 1), b_(1, 1), gw_(input, 1), gb_(1, 1) {}

void DenseHead::tensors(std::vector<TensorRef>& out) {
  out.push_back({&w_, &gw_});
  out.push_back({&b_, &gb_});
}

void DenseHead::init(sim::RngStream& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(w_.rows));
  for (double& v : w_.a) v = rng.uniform() * 2.0 * bound - bound;
}

void DenseHead::forward(const Mat& h_last, Mat& y) {
  h_last_ = h_last;
  pre_ = Mat(h_last.rows, 1);
  add_bias_rows(pre_, b_);
  gemm_nn(h_last, w_, pre_);
  y = pre_;
  if (act_ == Activation::relu) {
    for (double& v : y.a) v = v > 0.0 ? v : 0.0;
  }
}

void DenseHead::backward(const Mat& dy, Mat& dh_last) {
  Mat da = dy;
  if (act_ == Activation::relu) {
    for (std::size_t n = 0; n < da.size(); ++n) {
      if (pre_.a[n] <= 0.0) da.a[n] = 0.0;
    }
  }
  gemm_tn(h_last_, da, gw_);
  colsum_acc(da, gb_);
  dh_last = Mat(h_last_.rows, h_last_.cols);
  gemm_nt(da, w_, dh_last);
}

}  // namespace oransim::nn
