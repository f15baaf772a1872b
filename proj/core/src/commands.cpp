#include "oransim/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "oransim/errors.hpp"
#include "oransim/nn/dataset.hpp"
#include "oransim/nn/train.hpp"
#include "oransim/sim/runner.hpp"
#include "oransim/stats/anova.hpp"

namespace oransim::cli {
namespace fs = std::filesystem;
namespace {

std::uint64_t fnv1a64(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t kFnvBasis = 0xcbf29ce484222325ULL;

sim::Scenario scenario_for(const std::string& path) {
  if (path.empty()) return sim::default_scenario();
  return sim::load_scenario(path);
}

nn::Arch arch_from_name(const std::string& name) {
  if (name == "gru") return nn::Arch::gru;
  if (name == "lstm") return nn::Arch::lstm;
  throw ConfigError("unknown arch \"" + name + "\" (expected gru or lstm)");
}

std::vector<std::vector<double>> load_series(
    const std::vector<std::string>& paths) {
  if (paths.empty()) throw ConfigError("at least one data csv is required");
  std::vector<std::vector<double>> series;
  for (const auto& path : paths) {
    auto values = nn::series_values(nn::load_rsrp_csv(path));
    for (auto& v : values) series.push_back(std::move(v));
  }
  return series;
}

void write_run_artifacts(const std::string& dir, const sim::RunResult& result) {
  write_file(dir + "/aggregates.json", result.aggregates_json);
  write_file(dir + "/metrics.csv", result.metrics_csv);
  write_file(dir + "/decisions.csv", result.decisions_csv);
  write_file(dir + "/sdl.csv", result.sdl_csv);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

/// Numeric-named subdirectories, ascending.
std::vector<std::pair<std::uint64_t, std::string>> seed_dirs(
    const fs::path& mode_dir) {
  std::vector<std::pair<std::uint64_t, std::string>> out;
  for (const auto& entry : fs::directory_iterator(mode_dir)) {
    if (!entry.is_directory()) continue;
    const std::string name = entry.path().filename().string();
    if (name.empty() ||
        name.find_first_not_of("0123456789") != std::string::npos) {
      continue;
    }
    out.emplace_back(std::stoull(name), name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  auto parse_one = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("bad seed \"" + s + "\" in \"" + spec + "\"");
    }
    return std::stoull(s);
  };
  std::vector<std::uint64_t> seeds;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t lo = parse_one(spec.substr(0, dots));
    const std::uint64_t hi = parse_one(spec.substr(dots + 2));
    if (hi < lo) throw ConfigError("seed range is empty: " + spec);
    if (hi - lo >= 100000) throw ConfigError("seed range too large: " + spec);
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) seeds.push_back(parse_one(item));
  if (seeds.empty()) throw ConfigError("no seeds in \"" + spec + "\"");
  return seeds;
}

void write_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("short write to " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t campaign_hash(const std::string& campaign_dir) {
  std::vector<std::string> rel_paths;
  const fs::path root(campaign_dir);
  if (!fs::is_directory(root)) {
    throw DataError("campaign directory not found: " + campaign_dir);
  }
  for (const auto& entry : fs::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    const std::string mode = entry.path().filename().string();
    for (const auto& [seed, name] : seed_dirs(entry.path())) {
      const fs::path agg = entry.path() / name / "aggregates.json";
      if (fs::is_regular_file(agg)) {
        rel_paths.push_back(mode + "/" + name + "/aggregates.json");
      }
    }
  }
  std::sort(rel_paths.begin(), rel_paths.end());
  std::uint64_t h = kFnvBasis;
  for (const auto& rel : rel_paths) {
    h = fnv1a64(h, rel.data(), rel.size());
    const char nul = 0;
    h = fnv1a64(h, &nul, 1);
    const std::string bytes = read_file((root / rel).string());
    h = fnv1a64(h, bytes.data(), bytes.size());
  }
  return h;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const ModelError*>(&e)) return kExitModel;
  if (dynamic_cast<const DataError*>(&e)) return kExitData;
  return kExitUsage;
}

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream&) {
  const sim::Scenario sc = scenario_for(args.scenario_path);
  sim::RunConfig rc;
  rc.mode = sim::mode_from_name(args.mode);
  rc.seed = args.seed;
  rc.model_path = args.model_path;
  const sim::RunResult result = sim::run_scenario(sc, rc);
  if (!args.out_dir.empty()) write_run_artifacts(args.out_dir, result);
  out << result.aggregates_json;
  return kExitOk;
}

int cmd_campaign(const CampaignArgs& args, std::ostream& out,
                 std::ostream& err) {
  if (args.out_dir.empty()) throw ConfigError("campaign needs an output directory");
  std::vector<std::string> modes = args.modes;
  if (modes.empty()) modes = {"default", "oracle"};
  for (const auto& m : modes) {
    const sim::RunMode mode = sim::mode_from_name(m);
    if ((mode == sim::RunMode::gru || mode == sim::RunMode::lstm) &&
        args.model_path.empty()) {
      throw ConfigError("mode " + m + " requires --model");
    }
  }
  const std::vector<std::uint64_t> seeds = parse_seeds(args.seeds_spec);
  const sim::Scenario sc = scenario_for(args.scenario_path);

  struct Task {
    std::string mode;
    std::uint64_t seed;
  };
  std::vector<Task> pending;
  std::size_t resumed = 0;
  for (const auto& mode : modes) {
    for (const std::uint64_t seed : seeds) {
      const std::string dir =
          args.out_dir + "/" + mode + "/" + std::to_string(seed);
      if (fs::is_regular_file(dir + "/aggregates.json")) {
        ++resumed;
      } else {
        pending.push_back({mode, seed});
      }
    }
  }

  auto run_one = [&](const Task& task) {
    sim::RunConfig rc;
    rc.mode = sim::mode_from_name(task.mode);
    rc.seed = task.seed;
    rc.model_path = args.model_path;
    const sim::RunResult result = sim::run_scenario(sc, rc);
    write_run_artifacts(
        args.out_dir + "/" + task.mode + "/" + std::to_string(task.seed),
        result);
  };

  const int jobs = std::max(1, args.jobs);
  if (jobs == 1 || pending.size() <= 1) {
    for (const auto& task : pending) run_one(task);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= pending.size()) return;
        try {
          run_one(pending[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    };
    std::vector<std::thread> threads;
    const int n = std::min<int>(jobs, static_cast<int>(pending.size()));
    threads.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  nlohmann::ordered_json summary;
  summary["scenario"] = sc.name;
  summary["modes"] = modes;
  summary["seeds"] = seeds;
  summary["runs"] = modes.size() * seeds.size();
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(campaign_hash(args.out_dir)));
  summary["campaign_hash"] = hex;
  const std::string text = summary.dump(2) + "\n";
  write_file(args.out_dir + "/campaign.json", text);
  out << text;
  err << "campaign: " << pending.size() << " run(s), " << resumed
      << " resumed\n";
  return kExitOk;
}

int cmd_train(const TrainArgs& args, std::ostream& out, std::ostream& err) {
  if (args.out_path.empty()) throw ConfigError("train needs --out for the model file");
  const auto series = load_series(args.data_paths);

  nn::ModelConfig config;
  config.arch = arch_from_name(args.arch);
  if (args.lookback) config.lookback = *args.lookback;
  if (args.batch_size) config.batch_size = *args.batch_size;
  if (args.learning_rate) config.learning_rate = *args.learning_rate;
  if (args.epochs) config.epochs = *args.epochs;
  if (args.optimizer) {
    if (*args.optimizer == "adam") {
      config.optimizer = nn::OptimizerKind::adam;
    } else if (*args.optimizer == "rmsprop") {
      config.optimizer = nn::OptimizerKind::rmsprop;
    } else {
      throw ConfigError("unknown optimizer \"" + *args.optimizer + "\"");
    }
  }
  if (args.activation) {
    if (*args.activation == "relu") {
      config.activation = nn::Activation::relu;
    } else if (*args.activation == "linear") {
      config.activation = nn::Activation::linear;
    } else {
      throw ConfigError("unknown activation \"" + *args.activation + "\"");
    }
  }

  nn::TrainOptions options;
  options.seed = args.seed;
  options.patience = args.patience;
  options.stop_at_val_mae = args.target_val_mae;
  nn::TrainResult result = nn::train(config, series, options);
  result.model.save(args.out_path);

  const auto& rep = result.report;
  const int best = rep.best_epoch;
  nlohmann::ordered_json summary;
  summary["arch"] = nn::arch_name(config.arch);
  summary["epochs_run"] = rep.epochs_run;
  summary["best_epoch"] = best;
  summary["train_mse"] = rep.train_mse.at(static_cast<std::size_t>(best));
  summary["train_mae"] = rep.train_mae.at(static_cast<std::size_t>(best));
  summary["val_mse"] = rep.val_mse.at(static_cast<std::size_t>(best));
  summary["val_mae"] = rep.val_mae.at(static_cast<std::size_t>(best));
  summary["model"] = args.out_path;
  out << summary.dump(2) << "\n";
  err << "wall_seconds " << fmt_double(rep.wall_seconds) << "\n";

  if (!args.curves_path.empty()) {
    std::string csv = "epoch,train_mse,train_mae,val_mse,val_mae\n";
    for (int e = 0; e < rep.epochs_run; ++e) {
      const auto i = static_cast<std::size_t>(e);
      csv += std::to_string(e) + "," + fmt_double(rep.train_mse[i]) + "," +
             fmt_double(rep.train_mae[i]) + "," + fmt_double(rep.val_mse[i]) +
             "," + fmt_double(rep.val_mae[i]) + "\n";
    }
    write_file(args.curves_path, csv);
  }
  return kExitOk;
}

int cmd_grid(const GridArgs& args, std::ostream& out, std::ostream&) {
  const auto series = load_series(args.data_paths);
  nn::GridOptions options;
  options.seed = args.seed;
  options.epochs = args.epochs;
  options.patience = args.patience;
  options.budget = args.budget;
  options.jobs = args.jobs;
  const auto entries =
      nn::grid_search(arch_from_name(args.arch), series, options);
  const std::string csv = nn::format_grid_csv(entries);
  if (!args.out_path.empty()) write_file(args.out_path, csv);
  out << csv;
  return kExitOk;
}

int cmd_gen_data(const GenDataArgs& args, std::ostream&, std::ostream& err) {
  if (args.out_path.empty()) throw ConfigError("gen-data needs --out");
  const sim::Scenario sc = scenario_for(args.scenario_path);
  const auto seeds = parse_seeds(args.seeds_spec);

  std::string csv = "t_ms,ue_id,cell_id,rsrp_dbm\n";
  std::uint64_t rows = 0;
  char buf[96];
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (const auto& ue : sc.ues) {
      const radio::RadioTrace trace(sc.cells, sim::make_mobility(ue.vehicle),
                                    ue.vehicle.id, seeds[i], sc.radio,
                                    sc.report_period, sc.duration);
      const radio::UeId ue_out =
          ue.vehicle.id + static_cast<radio::UeId>(i) * 10000u;
      for (std::size_t k = 0; k < trace.rows(); ++k) {
        const auto t = trace.time_of_row(k);
        for (std::size_t c = 0; c < trace.cells().size(); ++c) {
          std::snprintf(buf, sizeof(buf), "%lld,%u,%u,%.10g\n",
                        static_cast<long long>(t.ms), ue_out,
                        trace.cells()[c].id, trace.rsrp_meas(k, c));
          csv += buf;
          ++rows;
        }
      }
    }
  }
  write_file(args.out_path, csv);
  err << "wrote " << rows << " samples to " << args.out_path << "\n";
  return kExitOk;
}

int cmd_report(const ReportArgs& args, std::ostream& out, std::ostream& err) {
  const fs::path root(args.campaign_dir);
  if (!fs::is_directory(root)) {
    err << "campaign directory not found: " << args.campaign_dir << "\n";
    return kExitMissingRuns;
  }
  std::vector<std::string> modes;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) modes.push_back(entry.path().filename().string());
  }
  std::sort(modes.begin(), modes.end());
  if (modes.size() < 2) {
    err << "need runs for at least two modes under " << args.campaign_dir
        << "\n";
    return kExitMissingRuns;
  }

  std::map<std::string, std::vector<nlohmann::json>> per_mode;
  for (const auto& mode : modes) {
    for (const auto& [seed, name] : seed_dirs(root / mode)) {
      const fs::path agg = root / mode / name / "aggregates.json";
      if (!fs::is_regular_file(agg)) continue;
      try {
        per_mode[mode].push_back(
            nlohmann::json::parse(read_file(agg.string())));
      } catch (const nlohmann::json::parse_error& e) {
        throw DataError(agg.string() + ": " + e.what());
      }
    }
    if (per_mode[mode].size() < 2) {
      err << "mode " << mode << " has " << per_mode[mode].size()
          << " run(s); need at least 2\n";
      return kExitMissingRuns;
    }
  }

  std::vector<std::string> metrics = args.metrics;
  if (metrics.empty()) {
    metrics = {"mean_cqi", "mean_delay_ms", "mean_throughput_bps",
               "freeze_count", "freeze_total_ms"};
  }

  std::string csv;
  for (const auto& metric : metrics) {
    std::vector<stats::GroupSamples> groups;
    for (const auto& mode : modes) {
      stats::GroupSamples g;
      g.label = mode;
      for (const auto& agg : per_mode[mode]) {
        if (!agg.contains(metric) || !agg[metric].is_number()) {
          throw DataError("metric \"" + metric + "\" missing from a " + mode +
                          " aggregate");
        }
        g.values.push_back(agg[metric].get<double>());
      }
      groups.push_back(std::move(g));
    }
    const auto table = stats::summarize(groups, metric);
    out << stats::format_text(table) << "\n";
    csv += stats::format_csv(table);
  }

  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(
                    campaign_hash(args.campaign_dir)));
  out << "campaign_hash " << hex << "\n";
  if (!args.out_path.empty()) write_file(args.out_path, csv);
  return kExitOk;
}

}  // namespace oransim::cli
