#include "spikenav/harness/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "spikenav/crowdenv/config_io.hpp"
#include "spikenav/harness/exports.hpp"
#include "spikenav/ppotrain/trainer.hpp"

namespace spikenav::harness {

namespace {

struct EvalArgs {
  std::string checkpoint;
  std::string scenario = "circle_interaction";
  std::string env_file;
  std::size_t episodes = 100;
  std::uint64_t seed = 0;
};

void add_eval_args(CLI::App* cmd, EvalArgs& a) {
  cmd->add_option("checkpoint", a.checkpoint, "Policy checkpoint")->required()->check(CLI::ExistingFile);
  cmd->add_option("--scenario", a.scenario, "Scenario name (circle_interaction, circle_crossing, random) or JSON file")
      ->capture_default_str();
  cmd->add_option("--env", a.env_file, "Environment config JSON")->check(CLI::ExistingFile);
  cmd->add_option("--episodes", a.episodes, "Number of evaluation episodes")->capture_default_str();
  cmd->add_option("--seed", a.seed, "Master evaluation seed")->capture_default_str();
}

EvalResult evaluate(const EvalArgs& a, bool traces, bool rasters) {
  const auto scenario = env::resolve_scenario(a.scenario);
  env::EnvConfig env_cfg;
  if (!a.env_file.empty()) env_cfg = env::env_config_from_json(env::read_json_file(a.env_file));
  EvalOptions opts;
  opts.n_episodes = a.episodes;
  opts.seed = a.seed;
  opts.keep_traces = traces;
  opts.keep_rasters = rasters;
  return run_episodes(a.checkpoint, scenario, env_cfg, opts);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Spiking actor-critic crowd navigation: training, evaluation and energy estimates"};
  app.require_subcommand(1);

  std::string train_config;
  std::optional<std::uint64_t> train_steps, train_seed;
  std::string train_out;
  auto* train = app.add_subcommand("train", "Train a policy from a run config JSON");
  train->add_option("config", train_config, "Run config JSON")->required()->check(CLI::ExistingFile);
  train->add_option("--total-steps", train_steps, "Override the environment step budget");
  train->add_option("--seed", train_seed, "Override the seed");
  train->add_option("--out", train_out, "Override the output directory");

  EvalArgs eval_args;
  std::string eval_json;
  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint with the deterministic policy");
  add_eval_args(eval, eval_args);
  eval->add_option("--json", eval_json, "Write the aggregate and per-episode metrics as JSON");

  EvalArgs energy_args;
  std::string energy_csv = "energy.csv";
  auto* energy_cmd = app.add_subcommand("energy", "Per-device energy estimate of a checkpoint");
  add_eval_args(energy_cmd, energy_args);
  energy_cmd->add_option("--csv", energy_csv, "Per-episode, per-device CSV output")->capture_default_str();

  EvalArgs traj_args;
  std::string traj_out = "trajectories.jsonl";
  std::string raster_out;
  auto* traj = app.add_subcommand("export-traj", "Export evaluation trajectories as JSONL");
  add_eval_args(traj, traj_args);
  traj->add_option("--out", traj_out, "Trajectory JSONL output")->capture_default_str();
  traj->add_option("--rasters", raster_out, "Also dump per-inference spike rasters to this JSONL file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*train) {
      auto cfg = ppo::load_run_config(train_config);
      if (train_steps) cfg.total_steps = *train_steps;
      if (train_seed) cfg.seed = *train_seed;
      if (!train_out.empty()) cfg.output_dir = train_out;
      if (cfg.output_dir.empty()) cfg.output_dir = "runs/" + cfg.name;
      std::cout << "training " << cfg.name << " for " << cfg.total_steps << " steps, output in "
                << cfg.output_dir.string() << '\n';
      const auto result = ppo::train(cfg, [](const ppo::UpdateRecord& r) {
        if (r.update % 10 == 0) {
          std::cout << "update " << r.update << "  steps " << r.env_steps << "  return " << r.mean_episode_return
                    << "  goal " << r.goal_rate << "  collision " << r.collision_rate << '\n';
        }
      });
      std::cout << "checkpoint " << result.final_checkpoint.string() << '\n';
    } else if (*eval) {
      const auto res = evaluate(eval_args, false, false);
      print_report(std::cout, res.report);
      if (!eval_json.empty()) {
        nlohmann::json episodes = nlohmann::json::array();
        for (const auto& m : res.metrics) episodes.push_back(to_json(m));
        open_out(eval_json) << nlohmann::json{{"aggregate", to_json(res.report)}, {"episodes", episodes}}.dump(2)
                            << '\n';
      }
    } else if (*energy_cmd) {
      const auto res = evaluate(energy_args, false, false);
      print_energy_table(std::cout, res.report);
      auto out = open_out(energy_csv);
      write_energy_csv(out, energy_args.scenario, res.metrics);
    } else if (*traj) {
      const bool rasters = !raster_out.empty();
      const auto res = evaluate(traj_args, true, rasters);
      auto out = open_out(traj_out);
      write_trajectories_jsonl(out, res.traces);
      if (rasters) {
        auto rout = open_out(raster_out);
        write_rasters_jsonl(rout, res.traces);
      }
      std::cout << "wrote " << res.traces.size() << " trajectories to " << traj_out << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace spikenav::harness
