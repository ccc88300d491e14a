#include "spikenav/ppotrain/rollout.hpp"

#include "spikenav/ppotrain/gae.hpp"

namespace spikenav::ppo {

double RolloutBuffer::mean_reward() const {
  if (steps.empty()) return 0.0;
  double s = 0.0;
  for (const auto& t : steps) s += t.reward;
  return s / static_cast<double>(steps.size());
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

EnvRunner::EnvRunner(env::ScenarioConfig scenario, env::EnvConfig config, std::uint64_t seed)
    : env_(std::move(scenario), std::move(config)), seed_(seed) {
  reset();
}

void EnvRunner::reset() {
  obs_ = env_.reset(derive_seed(seed_, episode_++));
  running_return_ = 0.0;
  running_length_ = 0;
}

policy::ObservationMatrix EnvRunner::observation_matrix() const {
  return policy::build_observation_matrix(obs_, env_.config().history_k);
}

policy::ActionBounds EnvRunner::bounds() const {
  return {env_.world().robot.v_pref, env_.config().d_heading_max};
}

std::pair<env::StepResult, bool> EnvRunner::advance(const env::Action& action,
                                                    std::vector<EpisodeSummary>* finished) {
  env::StepResult result = env_.step(action);
  running_return_ += result.reward;
  ++running_length_;
  const bool done = result.outcome != env::Outcome::kRunning;
  if (done) {
    if (finished) finished->push_back({result.outcome, running_return_, running_length_});
    reset();
  } else {
    obs_ = result.observation;
  }
  return {std::move(result), done};
}

RolloutBuffer collect_rollout(EnvRunner& runner, const policy::SpikingActorCritic& policy, std::size_t n_steps,
                              std::mt19937_64& rng) {
  diff::NoGradGuard no_grad;
  RolloutBuffer buf;
  buf.capacity = n_steps;
  buf.steps.reserve(n_steps);
  const auto log_std = policy.log_std();
  for (std::size_t i = 0; i < n_steps; ++i) {
    Transition tr;
    tr.obs = runner.observation_matrix();
    const auto out = policy.forward(std::span(&tr.obs, 1));
    tr.value = out.value.at(0);
    const auto sample = policy::sample_action(policy.pre_mean(out.actor), log_std, runner.bounds(), rng);
    tr.pre_image = sample.pre_image;
    tr.log_prob = sample.pre_image_log_prob;
    auto [result, done] = runner.advance(sample.action, &buf.episodes);
    tr.reward = result.reward;
    tr.done = done;
    buf.steps.push_back(std::move(tr));
  }
  if (!buf.steps.empty() && !buf.steps.back().done) {
    const auto next = runner.observation_matrix();
    buf.bootstrap_value = policy.critic_forward(std::span(&next, 1)).at(0);
  }
  return buf;
}

void compute_advantages(RolloutBuffer& buffer, double gamma, double lambda) {
  std::vector<double> rewards, values;
  std::vector<std::uint8_t> dones;
  for (const auto& t : buffer.steps) {
    rewards.push_back(t.reward);
    values.push_back(t.value);
    dones.push_back(t.done ? 1 : 0);
  }
  auto gae = compute_gae(rewards, values, dones, buffer.bootstrap_value, gamma, lambda);
  buffer.advantages = std::move(gae.advantages);
  buffer.returns = std::move(gae.returns);
}

}  // namespace spikenav::ppo
