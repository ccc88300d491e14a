#include "spikenav/ppotrain/trainer.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include "spikenav/crowdenv/config_io.hpp"
#include "spikenav/policynet/checkpoint.hpp"

namespace spikenav::ppo {

namespace {

constexpr std::uint64_t kStreamEnv = 1;
constexpr std::uint64_t kStreamSampling = 2;
constexpr std::uint64_t kStreamShuffle = 3;

UpdateRecord summarize(std::size_t update, std::uint64_t env_steps, const RolloutBuffer& buf,
                       const UpdateStats& stats) {
  UpdateRecord rec;
  rec.update = update;
  rec.env_steps = env_steps;
  rec.mean_step_reward = buf.mean_reward();
  rec.episodes = buf.episodes.size();
  rec.stats = stats;
  if (buf.episodes.empty()) {
    rec.mean_episode_return = std::numeric_limits<double>::quiet_NaN();
    return rec;
  }
  double ret = 0.0, goals = 0.0, collisions = 0.0;
  for (const auto& ep : buf.episodes) {
    ret += ep.episode_return;
    goals += ep.outcome == env::Outcome::kGoal;
    collisions += ep.outcome == env::Outcome::kCollision;
  }
  const double n = static_cast<double>(buf.episodes.size());
  rec.mean_episode_return = ret / n;
  rec.goal_rate = goals / n;
  rec.collision_rate = collisions / n;
  return rec;
}

}  // namespace

void write_curve_header(std::ostream& out) {
  out << "update,env_steps,mean_step_reward,mean_episode_return,episodes,goal_rate,collision_rate,"
         "policy_loss,value_loss,entropy,approx_kl,clip_fraction,grad_norm\n";
}

void write_curve_row(std::ostream& out, const UpdateRecord& r) {
  out << std::setprecision(17) << r.update << ',' << r.env_steps << ',' << r.mean_step_reward << ','
      << r.mean_episode_return << ',' << r.episodes << ',' << r.goal_rate << ',' << r.collision_rate << ','
      << r.stats.policy_loss << ',' << r.stats.value_loss << ',' << r.stats.entropy << ','
      << r.stats.approx_kl << ',' << r.stats.clip_fraction << ',' << r.stats.grad_norm << '\n';
}

TrainingResult train(const RunConfig& cfg_in, const UpdateCallback& on_update) {
  RunConfig cfg = cfg_in;
  cfg.network.obs_rows = cfg.env.observation_rows();
  cfg.init.seed = cfg.seed;
  cfg.validate();

  policy::SpikingActorCritic net(policy::PolicyParams::initialize(cfg.kind, cfg.network, cfg.init));
  AdamConfig adam_cfg;
  adam_cfg.lr = cfg.ppo.learning_rate;
  Adam optimizer(net.parameters(), adam_cfg);
  EnvRunner runner(cfg.scenario, cfg.env, derive_seed(cfg.seed, kStreamEnv));
  std::mt19937_64 sample_rng(derive_seed(cfg.seed, kStreamSampling));
  std::mt19937_64 shuffle_rng(derive_seed(cfg.seed, kStreamShuffle));

  std::ofstream log;
  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream(cfg.output_dir / "run_config.json") << to_json(cfg).dump(2) << '\n';
    log.open(cfg.output_dir / "training_log.csv");
    if (!log) throw std::runtime_error("cannot write training log in " + cfg.output_dir.string());
    write_curve_header(log);
  }
  const auto history_k = static_cast<std::uint32_t>(cfg.env.history_k);

  TrainingResult result;
  std::uint64_t steps = 0;
  for (std::size_t update = 1; steps + cfg.n_steps <= cfg.total_steps; ++update) {
    RolloutBuffer buf = collect_rollout(runner, net, cfg.n_steps, sample_rng);
    steps += buf.steps.size();
    compute_advantages(buf, cfg.ppo.gamma, cfg.ppo.gae_lambda);
    const UpdateStats stats = ppo_update(buf, net, optimizer, cfg.ppo, shuffle_rng);
    const UpdateRecord rec = summarize(update, steps, buf, stats);
    result.curve.push_back(rec);
    if (log.is_open()) {
      write_curve_row(log, rec);
      log.flush();
    }
    if (on_update) on_update(rec);
    if (!cfg.output_dir.empty() && cfg.checkpoint_every > 0 && update % cfg.checkpoint_every == 0) {
      policy::save_checkpoint(cfg.output_dir / ("checkpoint_" + std::to_string(update) + ".ckpt"), net.params(),
                              history_k);
    }
  }
  if (!cfg.output_dir.empty()) {
    result.final_checkpoint = cfg.output_dir / "final.ckpt";
    policy::save_checkpoint(result.final_checkpoint, net.params(), history_k);
  }
  result.params = net.params();
  return result;
}

}  // namespace spikenav::ppo
