#include "oransim/nn/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>

#include "oransim/errors.hpp"

namespace oransim::nn {

namespace {

constexpr char kMagic[4] = {'O', 'R', 'N', 'M'};
constexpr std::uint16_t kFormatVersion = 1;

void put_u8(std::ostream& os, std::uint8_t v) {
  os.put(static_cast<char>(v));
}

void put_u16(std::ostream& os, std::uint16_t v) {
  put_u8(os, static_cast<std::uint8_t>(v >> 8));
  put_u8(os, static_cast<std::uint8_t>(v));
}

void put_u32(std::ostream& os, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    put_u8(os, static_cast<std::uint8_t>(v >> shift));
  }
}

void put_f64(std::ostream& os, double v) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  for (int shift = 56; shift >= 0; shift -= 8) {
    put_u8(os, static_cast<std::uint8_t>(bits >> shift));
  }
}

std::uint8_t get_u8(std::istream& is) {
  const int c = is.get();
  if (c < 0) throw ModelError("model file truncated");
  return static_cast<std::uint8_t>(c);
}

std::uint16_t get_u16(std::istream& is) {
  std::uint16_t v = get_u8(is);
  return static_cast<std::uint16_t>(v << 8 | get_u8(is));
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = v << 8 | get_u8(is);
  return v;
}

double get_f64(std::istream& is) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits = bits << 8 | get_u8(is);
  return std::bit_cast<double>(bits);
}

}  // namespace

void validate(const ModelConfig& c) {
  if (c.lookback < 1) throw ConfigError("lookback must be >= 1");
  if (c.learning_rate <= 0.0) throw ConfigError("learning rate must be > 0");
  if (c.batch_size < 1) throw ConfigError("batch size must be >= 1");
  if (c.epochs < 1) throw ConfigError("epochs must be >= 1");
  if (c.gru_units < 1 || c.lstm_units1 < 1 || c.lstm_units2 < 1) {
    throw ConfigError("layer units must be > 0");
  }
  if (c.dropout_rate < 0.0 || c.dropout_rate >= 1.0) {
    throw ConfigError("dropout rate must be in [0,1)");
  }
}

const char* arch_name(Arch a) { return a == Arch::gru ? "gru" : "lstm"; }

const char* activation_name(Activation a) {
  return a == Activation::relu ? "relu" : "linear";
}

const char* optimizer_name(OptimizerKind o) {
  return o == OptimizerKind::adam ? "adam" : "rmsprop";
}

double Scaler::normalize_clamped(double x) const {
  return std::clamp(normalize(x), 0.0, 1.0);
}

Scaler Scaler::fit(std::span<const double> values) {
  if (values.empty()) throw DataError("cannot fit scaler on empty data");
  Scaler s;
  s.min = *std::min_element(values.begin(), values.end());
  s.max = *std::max_element(values.begin(), values.end());
  if (s.max <= s.min) s.max = s.min + 1.0;
  return s;
}

RecurrentModel::RecurrentModel(ModelConfig config, std::uint64_t init_seed)
    : config_(config),
      head_(config.arch == Arch::gru ? config.gru_units : config.lstm_units2,
            config.activation) {
  validate(config_);
  if (config_.arch == Arch::gru) {
    stack_.push_back(std::make_unique<GruLayer>(1, config_.gru_units));
  } else {
    stack_.push_back(std::make_unique<LstmLayer>(1, config_.lstm_units1));
    stack_.push_back(std::make_unique<DropoutLayer>(config_.lstm_units1,
                                                    config_.dropout_rate));
    stack_.push_back(std::make_unique<LstmLayer>(config_.lstm_units1,
                                                 config_.lstm_units2));
    stack_.push_back(std::make_unique<DropoutLayer>(config_.lstm_units2,
                                                    config_.dropout_rate));
  }
  sim::RngStream rng("nn/init", init_seed);
  for (auto& layer : stack_) layer->init(rng);
  head_.init(rng);
}

Mat RecurrentModel::forward_batch(const std::vector<Mat>& xs, bool training,
                                  sim::RngStream* rng) {
  if (xs.empty()) throw ModelError("empty input sequence");
  seq_bufs_.resize(stack_.size());
  const std::vector<Mat>* cur = &xs;
  for (std::size_t i = 0; i < stack_.size(); ++i) {
    stack_[i]->forward(*cur, seq_bufs_[i], training, rng);
    cur = &seq_bufs_[i];
  }
  steps_ = xs.size();
  batch_ = xs[0].rows;
  Mat y;
  head_.forward(cur->back(), y);
  return y;
}

void RecurrentModel::backward_batch(const Mat& dpred) {
  Mat dh;
  head_.backward(dpred, dh);
  const int top_dim = stack_.back()->out_dim();
  std::vector<Mat> dys(steps_);
  for (std::size_t t = 0; t + 1 < steps_; ++t) dys[t] = Mat(batch_, top_dim);
  dys[steps_ - 1] = std::move(dh);
  for (std::size_t i = stack_.size(); i-- > 0;) {
    std::vector<Mat> dxs;
    stack_[i]->backward(dys, dxs);
    dys = std::move(dxs);
  }
}

void RecurrentModel::zero_grads() {
  for (const TensorRef& t : tensors()) t.g->zero();
}

std::vector<TensorRef> RecurrentModel::tensors() {
  std::vector<TensorRef> out;
  for (auto& layer : stack_) layer->tensors(out);
  head_.tensors(out);
  return out;
}

double RecurrentModel::forward(const std::vector<double>& window_normalized) {
  if (static_cast<int>(window_normalized.size()) != config_.lookback) {
    throw ModelError("window length must equal lookback");
  }
  std::vector<Mat> xs(window_normalized.size());
  for (std::size_t t = 0; t < window_normalized.size(); ++t) {
    xs[t] = Mat(1, 1);
    xs[t].at(0, 0) = window_normalized[t];
  }
  return forward_batch(xs, false, nullptr).at(0, 0);
}

double RecurrentModel::predict_dbm(const std::vector<double>& window_dbm) {
  std::vector<double> normalized(window_dbm.size());
  for (std::size_t i = 0; i < window_dbm.size(); ++i) {
    normalized[i] = scaler_.normalize_clamped(window_dbm[i]);
  }
  return scaler_.denormalize(normalized.back() + forward(normalized));
}

std::vector<double> RecurrentModel::predict_recursive(
    const std::vector<double>& history_dbm, std::size_t n) {
  const std::size_t lookback = static_cast<std::size_t>(config_.lookback);
  if (history_dbm.size() < lookback) {
    throw ModelError("history shorter than lookback");
  }
  std::vector<double> window(history_dbm.end() - lookback, history_dbm.end());
  for (double& v : window) v = scaler_.normalize_clamped(v);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double p = window.back() + forward(window);
    out.push_back(scaler_.denormalize(p));
    window.erase(window.begin());
    window.push_back(std::clamp(p, 0.0, 1.0));
  }
  return out;
}

void RecurrentModel::freeze_dropout(bool frozen) {
  for (auto& layer : stack_) {
    if (auto* d = dynamic_cast<DropoutLayer*>(layer.get())) {
      d->freeze_masks(frozen);
    }
  }
}

void RecurrentModel::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ModelError("cannot open model file for writing: " + path);
  os.write(kMagic, sizeof(kMagic));
  put_u16(os, kFormatVersion);
  put_u8(os, config_.arch == Arch::gru ? 0 : 1);
  put_u8(os, config_.activation == Activation::relu ? 0 : 1);
  put_u8(os, config_.optimizer == OptimizerKind::adam ? 0 : 1);
  put_u32(os, static_cast<std::uint32_t>(config_.lookback));
  put_u32(os, static_cast<std::uint32_t>(config_.batch_size));
  put_u32(os, static_cast<std::uint32_t>(config_.epochs));
  put_u32(os, static_cast<std::uint32_t>(config_.gru_units));
  put_u32(os, static_cast<std::uint32_t>(config_.lstm_units1));
  put_u32(os, static_cast<std::uint32_t>(config_.lstm_units2));
  put_f64(os, config_.learning_rate);
  put_f64(os, config_.dropout_rate);
  put_f64(os, scaler_.min);
  put_f64(os, scaler_.max);
  auto* self = const_cast<RecurrentModel*>(this);
  const auto refs = self->tensors();
  put_u32(os, static_cast<std::uint32_t>(refs.size()));
  for (const TensorRef& t : refs) {
    put_u32(os, static_cast<std::uint32_t>(t.w->rows));
    put_u32(os, static_cast<std::uint32_t>(t.w->cols));
    for (const double v : t.w->a) put_f64(os, v);
  }
  if (!os) throw ModelError("write failed: " + path);
}

RecurrentModel RecurrentModel::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ModelError("cannot open model file: " + path);
  char magic[4];
  is.read(magic, sizeof(magic));
  if (is.gcount() != sizeof(magic) ||
      !std::equal(magic, magic + 4, kMagic)) {
    throw ModelError("bad model file magic");
  }
  const std::uint16_t version = get_u16(is);
  if (version != kFormatVersion) {
    throw ModelError("unsupported model file version " +
                     std::to_string(version));
  }
  ModelConfig c;
  c.arch = get_u8(is) == 0 ? Arch::gru : Arch::lstm;
  c.activation = get_u8(is) == 0 ? Activation::relu : Activation::linear;
  c.optimizer = get_u8(is) == 0 ? OptimizerKind::adam : OptimizerKind::rmsprop;
  c.lookback = static_cast<int>(get_u32(is));
  c.batch_size = static_cast<int>(get_u32(is));
  c.epochs = static_cast<int>(get_u32(is));
  c.gru_units = static_cast<int>(get_u32(is));
  c.lstm_units1 = static_cast<int>(get_u32(is));
  c.lstm_units2 = static_cast<int>(get_u32(is));
  c.learning_rate = get_f64(is);
  c.dropout_rate = get_f64(is);
  RecurrentModel model(c, 0);
  model.scaler_.min = get_f64(is);
  model.scaler_.max = get_f64(is);
  const std::uint32_t count = get_u32(is);
  const auto refs = model.tensors();
  if (count != refs.size()) {
    throw ModelError("model file tensor count mismatch");
  }
  for (const TensorRef& t : refs) {
    const std::uint32_t rows = get_u32(is);
    const std::uint32_t cols = get_u32(is);
    if (rows != static_cast<std::uint32_t>(t.w->rows) ||
        cols != static_cast<std::uint32_t>(t.w->cols)) {
      throw ModelError("model file tensor shape mismatch");
    }
    for (double& v : t.w->a) v = get_f64(is);
  }
  return model;
}

}  // namespace oransim::nn
