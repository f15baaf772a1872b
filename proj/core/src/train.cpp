#include "oransim/nn/train.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numeric>
#include <thread>

#include "oransim/errors.hpp"

namespace oransim::nn {

namespace {

struct EpochAccum {
  double se = 0.0;
  double ae = 0.0;
  std::size_t n = 0;

  void add(const Mat& pred, const Mat& y) {
    for (int b = 0; b < pred.rows; ++b) {
      const double e = pred.at(b, 0) - y.at(b, 0);
      se += e * e;
      ae += std::abs(e);
    }
    n += static_cast<std::size_t>(pred.rows);
  }
  double mse() const { return n ? se / static_cast<double>(n) : 0.0; }
  double mae() const { return n ? ae / static_cast<double>(n) : 0.0; }
};

void fill_batch(const WindowSet& ws, const std::vector<std::size_t>& order,
                std::size_t first, std::size_t count, std::vector<Mat>& xs,
                Mat& y) {
  const int lookback = ws.lookback;
  xs.assign(static_cast<std::size_t>(lookback), Mat());
  for (int t = 0; t < lookback; ++t) {
    xs[static_cast<std::size_t>(t)] = Mat(static_cast<int>(count), 1);
  }
  y = Mat(static_cast<int>(count), 1);
  for (std::size_t b = 0; b < count; ++b) {
    const std::size_t idx = order[first + b];
    const auto& w = ws.windows[idx];
    for (int t = 0; t < lookback; ++t) {
      xs[static_cast<std::size_t>(t)].at(static_cast<int>(b), 0) =
          w[static_cast<std::size_t>(t)];
    }
    y.at(static_cast<int>(b), 0) = ws.targets[idx];
  }
}

void evaluate(RecurrentModel& model, const WindowSet& ws, EpochAccum& acc) {
  constexpr std::size_t kEvalBatch = 256;
  std::vector<std::size_t> order(ws.windows.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Mat> xs;
  Mat y;
  for (std::size_t first = 0; first < order.size(); first += kEvalBatch) {
    const std::size_t count = std::min(kEvalBatch, order.size() - first);
    fill_batch(ws, order, first, count, xs, y);
    const Mat pred = model.forward_batch(xs, false, nullptr);
    acc.add(pred, y);
  }
}

std::vector<std::vector<double>> snapshot(RecurrentModel& model) {
  std::vector<std::vector<double>> out;
  for (const TensorRef& t : model.tensors()) out.push_back(t.w->a);
  return out;
}

void restore(RecurrentModel& model, const std::vector<std::vector<double>>& snap) {
  const auto refs = model.tensors();
  for (std::size_t i = 0; i < refs.size(); ++i) refs[i].w->a = snap[i];
}

std::unique_ptr<Optimizer> make_optimizer(const ModelConfig& config) {
  if (config.optimizer == OptimizerKind::adam) {
    return std::make_unique<AdamOptimizer>(config.learning_rate);
  }
  return std::make_unique<RmsPropOptimizer>(config.learning_rate);
}

}  // namespace

PreparedData prepare_windows(const std::vector<std::vector<double>>& series,
                             int lookback) {
  if (lookback < 1) throw ConfigError("lookback must be >= 1");
  std::vector<double> train_values;
  for (const auto& s : series) {
    const std::size_t split = s.size() * 8 / 10;
    train_values.insert(train_values.end(), s.begin(),
                        s.begin() + static_cast<std::ptrdiff_t>(split));
  }
  if (train_values.empty()) throw DataError("dataset too small");

  PreparedData out;
  out.scaler = Scaler::fit(train_values);
  out.train.lookback = lookback;
  out.val.lookback = lookback;
  const std::size_t lb = static_cast<std::size_t>(lookback);
  for (const auto& s : series) {
    const std::size_t split = s.size() * 8 / 10;
    std::vector<double> norm(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      norm[i] = out.scaler.normalize_clamped(s[i]);
    }
    for (std::size_t target = lb; target < s.size(); ++target) {
      WindowSet& ws = target < split ? out.train : out.val;
      ws.windows.emplace_back(norm.begin() + static_cast<std::ptrdiff_t>(target - lb),
                              norm.begin() + static_cast<std::ptrdiff_t>(target));
      ws.targets.push_back(norm[target] - norm[target - 1]);
    }
  }
  if (out.train.windows.empty() || out.val.windows.empty()) {
    throw DataError("dataset too small");
  }
  return out;
}

TrainResult train(const ModelConfig& config,
                  const std::vector<std::vector<double>>& series_dbm,
                  const TrainOptions& options) {
  validate(config);
  const auto t0 = std::chrono::steady_clock::now();
  PreparedData data = prepare_windows(series_dbm, config.lookback);

  RecurrentModel model(config, options.seed);
  model.scaler() = data.scaler;
  auto optimizer = make_optimizer(config);
  sim::RngStream shuffle_rng("train/shuffle", options.seed);
  sim::RngStream dropout_rng("train/dropout", options.seed);

  TrainReport report;
  std::vector<std::size_t> order(data.train.windows.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<double>> best_weights = snapshot(model);
  double best_val_mse = std::numeric_limits<double>::infinity();
  int since_best = 0;
  const std::size_t batch_size = static_cast<std::size_t>(config.batch_size);

  std::vector<Mat> xs;
  Mat y;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      const std::uint64_t j = shuffle_rng.uniform_int(i);
      std::swap(order[i - 1], order[j]);
    }
    EpochAccum train_acc;
    for (std::size_t first = 0; first < order.size(); first += batch_size) {
      const std::size_t count = std::min(batch_size, order.size() - first);
      fill_batch(data.train, order, first, count, xs, y);
      const Mat pred = model.forward_batch(xs, true, &dropout_rng);
      train_acc.add(pred, y);
      Mat dpred(pred.rows, 1);
      const double scale = 2.0 / static_cast<double>(pred.rows);
      for (int b = 0; b < pred.rows; ++b) {
        dpred.at(b, 0) = scale * (pred.at(b, 0) - y.at(b, 0));
      }
      model.zero_grads();
      model.backward_batch(dpred);
      optimizer->step(model.tensors());
    }
    EpochAccum val_acc;
    evaluate(model, data.val, val_acc);

    report.train_mse.push_back(train_acc.mse());
    report.train_mae.push_back(train_acc.mae());
    report.val_mse.push_back(val_acc.mse());
    report.val_mae.push_back(val_acc.mae());

    if (val_acc.mse() < best_val_mse) {
      best_val_mse = val_acc.mse();
      best_weights = snapshot(model);
      report.best_epoch = epoch;
      since_best = 0;
    } else {
      ++since_best;
    }
    if (options.stop_at_val_mae && val_acc.mae() < *options.stop_at_val_mae) {
      break;
    }
    if (since_best >= options.patience) break;
  }

  restore(model, best_weights);
  report.epochs_run = static_cast<int>(report.val_mse.size());
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return TrainResult{std::move(model), std::move(report)};
}

std::vector<ModelConfig> grid_space(Arch arch) {
  static constexpr int kLookbacks[] = {10, 15};
  static constexpr OptimizerKind kOpts[] = {OptimizerKind::rmsprop,
                                            OptimizerKind::adam};
  static constexpr Activation kActs[] = {Activation::relu, Activation::linear};
  static constexpr int kBatches[] = {16, 32, 64};
  static constexpr double kRates[] = {1e-4, 5e-4, 1e-3, 5e-3};

  std::vector<ModelConfig> out;
  for (const int lookback : kLookbacks) {
    for (const OptimizerKind opt : kOpts) {
      for (const Activation act : kActs) {
        for (const int batch : kBatches) {
          for (const double lr : kRates) {
            ModelConfig c;
            c.arch = arch;
            c.lookback = lookback;
            c.optimizer = opt;
            c.activation = act;
            c.batch_size = batch;
            c.learning_rate = lr;
            out.push_back(c);
          }
        }
      }
    }
  }
  return out;
}

std::vector<GridEntry> grid_search(
    Arch arch, const std::vector<std::vector<double>>& series_dbm,
    const GridOptions& options) {
  std::vector<ModelConfig> space = grid_space(arch);
  if (options.budget) {
    const std::size_t budget =
        static_cast<std::size_t>(std::max(0, *options.budget));
    if (budget < space.size()) space.resize(budget);
  }
  std::vector<GridEntry> entries(space.size());

  const auto run_one = [&](std::size_t i) {
    ModelConfig config = space[i];
    config.epochs = options.epochs;
    TrainOptions topts;
    topts.seed = options.seed;
    topts.patience = options.patience;
    const TrainResult result = train(config, series_dbm, topts);
    GridEntry& e = entries[i];
    e.config = config;
    e.best_epoch = result.report.best_epoch;
    e.epochs_run = result.report.epochs_run;
    e.val_mse = result.report.val_mse[static_cast<std::size_t>(
        result.report.best_epoch)];
    e.val_mae = result.report.val_mae[static_cast<std::size_t>(
        result.report.best_epoch)];
  };

  const int jobs = std::max(1, options.jobs);
  if (jobs == 1 || space.size() <= 1) {
    for (std::size_t i = 0; i < space.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const int n = std::min<int>(jobs, static_cast<int>(space.size()));
    workers.reserve(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < space.size();
             i = next.fetch_add(1)) {
          run_one(i);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  std::stable_sort(entries.begin(), entries.end(),
                   [](const GridEntry& a, const GridEntry& b) {
                     if (a.val_mse != b.val_mse) return a.val_mse < b.val_mse;
                     return a.val_mae < b.val_mae;
                   });
  return entries;
}

std::string format_grid_csv(const std::vector<GridEntry>& entries) {
  std::string out =
      "rank,arch,lookback,optimizer,activation,batch_size,learning_rate,"
      "val_mse,val_mae,best_epoch,epochs_run\n";
  char buf[256];
  int rank = 1;
  for (const GridEntry& e : entries) {
    std::snprintf(buf, sizeof(buf), "%d,%s,%d,%s,%s,%d,%.10g,%.10g,%.10g,%d,%d\n",
                  rank++, arch_name(e.config.arch), e.config.lookback,
                  optimizer_name(e.config.optimizer),
                  activation_name(e.config.activation), e.config.batch_size,
                  e.config.learning_rate, e.val_mse, e.val_mae, e.best_epoch,
                  e.epochs_run);
    out += buf;
  }
  return out;
}

}  // namespace oransim::nn
