#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace oransim::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitModel = 3;
inline constexpr int kExitData = 4;
inline constexpr int kExitMissingRuns = 5;

struct RunArgs {
  std::string scenario_path;  // empty: built-in default scenario
  std::string mode = "default";
  std::uint64_t seed = 1;
  std::string model_path;
  std::string out_dir;  // empty: aggregates to stdout only
};

struct CampaignArgs {
  std::string scenario_path;
  std::vector<std::string> modes;
  std::string seeds_spec = "1..30";  // "a..b" or comma list
  std::string model_path;
  std::string out_dir;
  int jobs = 1;
};

struct TrainArgs {
  std::vector<std::string> data_paths;
  std::string arch = "gru";
  std::string out_path;
  std::string curves_path;  // optional per-epoch csv
  std::optional<int> lookback;
  std::optional<std::string> optimizer;
  std::optional<std::string> activation;
  std::optional<int> batch_size;
  std::optional<double> learning_rate;
  std::optional<int> epochs;
  std::uint64_t seed = 1;
  int patience = 20;
  std::optional<double> target_val_mae;
};

struct GridArgs {
  std::vector<std::string> data_paths;
  std::string arch = "gru";
  std::optional<int> budget;
  int epochs = 30;
  int patience = 10;
  int jobs = 1;
  std::uint64_t seed = 1;
  std::string out_path;  // optional csv
};

struct GenDataArgs {
  std::string scenario_path;
  std::string seeds_spec = "1001..1003";
  std::string out_path;
};

struct ReportArgs {
  std::string campaign_dir;
  std::vector<std::string> metrics;  // empty: default KPI set
  std::string out_path;              // optional csv
};

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err);
int cmd_campaign(const CampaignArgs& args, std::ostream& out,
                 std::ostream& err);
int cmd_train(const TrainArgs& args, std::ostream& out, std::ostream& err);
int cmd_grid(const GridArgs& args, std::ostream& out, std::ostream& err);
int cmd_gen_data(const GenDataArgs& args, std::ostream& out,
                 std::ostream& err);
int cmd_report(const ReportArgs& args, std::ostream& out, std::ostream& err);

/// "a..b" (inclusive) or comma-separated list; throws ConfigError.
std::vector<std::uint64_t> parse_seeds(const std::string& spec);

/// Creates parent directories as needed.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);  // throws DataError

/// FNV-1a over (relative path, NUL, bytes) of every campaign
/// aggregates.json, visited in sorted path order.
std::uint64_t campaign_hash(const std::string& campaign_dir);

/// Maps the library error taxonomy onto exit codes; rethrows nothing.
int exit_code_for(const std::exception& e);

}  // namespace oransim::cli
