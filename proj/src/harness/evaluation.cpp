#include "spikenav/harness/evaluation.hpp"

#include "spikenav/policynet/checkpoint.hpp"
#include "spikenav/ppotrain/rollout.hpp"

namespace spikenav::harness {

namespace {

EpisodeMetrics run_one(const policy::SpikingActorCritic& policy, env::CrowdEnv& env, std::uint64_t seed,
                       EpisodeTrace* trace, bool keep_rasters) {
  env::Observation obs = env.reset(seed);
  const env::Vec2 start = env.world().robot.position;
  const env::Vec2 goal = env.world().robot.goal;
  const auto conn = policy.connectivity();
  const auto widths = conn.widths();

  std::vector<env::Vec2> path{start};
  std::vector<env::AgentState> robot_steps;
  std::vector<std::vector<env::AgentState>> human_steps;
  if (trace) trace->steps.push_back({0, env.world().robot, env.world().humans, {}, 0.0});

  EpisodeMetrics m;
  diff::NoGradGuard no_grad;
  while (env.outcome() == env::Outcome::kRunning) {
    const auto mat = policy::build_observation_matrix(obs, env.config().history_k);
    const auto out = policy.actor_forward(std::span(&mat, 1));
    const auto rasters = policy.energy_rasters(out);
    m.episode_energy += energy::estimate(rasters, conn, mat.time_bins(), widths);
    if (trace && keep_rasters) trace->rasters.push_back({rasters});

    const policy::ActionBounds bounds{env.world().robot.v_pref, env.config().d_heading_max};
    const env::Action action = policy::squash_action(policy.pre_mean(out), bounds);
    env::StepResult res = env.step(action);
    m.episode_return += res.reward;
    ++m.steps;
    path.push_back(env.world().robot.position);
    robot_steps.push_back(env.world().robot);
    human_steps.push_back(env.world().humans);
    if (trace) trace->steps.push_back({m.steps, env.world().robot, env.world().humans, res.info.applied, res.reward});
    obs = std::move(res.observation);
  }
  m.outcome = env.outcome();
  m.traveled_distance = path_length(path);
  m.ideal_distance = (goal - start).norm() - env.goal_tolerance();
  m.detour_ratio = detour_ratio(path, goal, start, env.goal_tolerance());
  m.proxemic_violation_steps = proxemic_violations(robot_steps, human_steps);
  if (trace) trace->outcome = m.outcome;
  return m;
}

}  // namespace

EvalResult run_episodes(const policy::SpikingActorCritic& policy, const env::ScenarioConfig& scenario,
                        const env::EnvConfig& env_cfg, const EvalOptions& options) {
  if (policy.params().shape.obs_rows != env_cfg.observation_rows()) {
    throw policy::CheckpointError("policy expects " + std::to_string(policy.params().shape.obs_rows) +
                                  " observation rows, environment produces " +
                                  std::to_string(env_cfg.observation_rows()));
  }
  env::CrowdEnv env(scenario, env_cfg);
  EvalResult result;
  for (std::size_t i = 0; i < options.n_episodes; ++i) {
    const std::uint64_t seed = ppo::derive_seed(options.seed, i);
    EpisodeTrace trace;
    trace.episode = i;
    trace.seed = seed;
    result.metrics.push_back(
        run_one(policy, env, seed, options.keep_traces ? &trace : nullptr, options.keep_rasters));
    if (options.keep_traces) result.traces.push_back(std::move(trace));
  }
  result.report = aggregate(result.metrics);
  return result;
}

EvalResult run_episodes(const std::filesystem::path& checkpoint, const env::ScenarioConfig& scenario,
                        env::EnvConfig env_cfg, const EvalOptions& options) {
  auto loaded = policy::load_checkpoint(checkpoint);
  env_cfg.history_k = loaded.history_k;
  return run_episodes(policy::SpikingActorCritic(std::move(loaded.params)), scenario, env_cfg, options);
}

}  // namespace spikenav::harness
