#include <iostream>

#include <CLI11.hpp>

#include "oransim/cli/commands.hpp"

namespace {

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return oransim::cli::exit_code_for(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace oransim::cli;

  CLI::App app{"deterministic vehicular RAN / near-RT RIC co-simulation"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "execute one seeded run");
  run->add_option("--scenario", run_args.scenario_path,
                  "scenario json (omit for the built-in default)");
  run->add_option("--mode", run_args.mode,
                  "default, gru, lstm or oracle");
  run->add_option("--seed", run_args.seed, "run seed");
  run->add_option("--model", run_args.model_path,
                  "trained model file (gru/lstm modes)");
  run->add_option("--out", run_args.out_dir, "artifact directory");

  CampaignArgs campaign_args;
  auto* campaign =
      app.add_subcommand("campaign", "seed sweep across modes");
  campaign->add_option("--scenario", campaign_args.scenario_path,
                       "scenario json");
  campaign->add_option("--modes", campaign_args.modes, "modes to sweep")
      ->delimiter(',');
  campaign->add_option("--seeds", campaign_args.seeds_spec,
                       "seed range a..b or comma list");
  campaign->add_option("--model", campaign_args.model_path,
                       "trained model file (gru/lstm modes)");
  campaign->add_option("--out", campaign_args.out_dir, "campaign directory")
      ->required();
  campaign->add_option("--jobs", campaign_args.jobs, "parallel runs");

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "train a forecasting model");
  train->add_option("--data", train_args.data_paths, "rsrp csv file(s)")
      ->required()
      ->delimiter(',');
  train->add_option("--arch", train_args.arch, "gru or lstm");
  train->add_option("--out", train_args.out_path, "model output file")
      ->required();
  train->add_option("--curves", train_args.curves_path,
                    "per-epoch metrics csv");
  train->add_option("--lookback", train_args.lookback, "window length");
  train->add_option("--optimizer", train_args.optimizer, "adam or rmsprop");
  train->add_option("--activation", train_args.activation, "relu or linear");
  train->add_option("--batch", train_args.batch_size, "minibatch size");
  train->add_option("--lr", train_args.learning_rate, "learning rate");
  train->add_option("--epochs", train_args.epochs, "max epochs");
  train->add_option("--seed", train_args.seed, "training seed");
  train->add_option("--patience", train_args.patience,
                    "early-stop patience, epochs");
  train->add_option("--target-val-mae", train_args.target_val_mae,
                    "stop once validation MAE drops below this");

  GridArgs grid_args;
  auto* grid =
      app.add_subcommand("grid-search", "rank hyperparameter configs");
  grid->add_option("--data", grid_args.data_paths, "rsrp csv file(s)")
      ->required()
      ->delimiter(',');
  grid->add_option("--arch", grid_args.arch, "gru or lstm");
  grid->add_option("--budget", grid_args.budget,
                   "evaluate only the first N configs");
  grid->add_option("--epochs", grid_args.epochs, "epochs per config");
  grid->add_option("--patience", grid_args.patience, "early-stop patience");
  grid->add_option("--jobs", grid_args.jobs, "parallel trainings");
  grid->add_option("--seed", grid_args.seed, "training seed");
  grid->add_option("--out", grid_args.out_path, "ranking csv");

  GenDataArgs gen_args;
  auto* gen = app.add_subcommand("gen-data",
                                 "synthesize rsrp training series");
  gen->add_option("--scenario", gen_args.scenario_path, "scenario json");
  gen->add_option("--seeds", gen_args.seeds_spec,
                  "seed range a..b or comma list");
  gen->add_option("--out", gen_args.out_path, "output csv")->required();

  ReportArgs report_args;
  auto* report =
      app.add_subcommand("report", "ANOVA tables over a campaign");
  report->add_option("--campaign", report_args.campaign_dir,
                     "campaign directory")
      ->required();
  report->add_option("--metrics", report_args.metrics, "metrics to compare")
      ->delimiter(',');
  report->add_option("--out", report_args.out_path, "comparison csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (run->parsed()) {
    return guarded([&] { return cmd_run(run_args, std::cout, std::cerr); });
  }
  if (campaign->parsed()) {
    return guarded(
        [&] { return cmd_campaign(campaign_args, std::cout, std::cerr); });
  }
  if (train->parsed()) {
    return guarded([&] { return cmd_train(train_args, std::cout, std::cerr); });
  }
  if (grid->parsed()) {
    return guarded([&] { return cmd_grid(grid_args, std::cout, std::cerr); });
  }
  if (gen->parsed()) {
    return guarded(
        [&] { return cmd_gen_data(gen_args, std::cout, std::cerr); });
  }
  if (report->parsed()) {
    return guarded(
        [&] { return cmd_report(report_args, std::cout, std::cerr); });
  }
  return kExitUsage;
}
