#ifndef SPIKENAV_PPOTRAIN_ROLLOUT_HPP_
#define SPIKENAV_PPOTRAIN_ROLLOUT_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "spikenav/crowdenv/env.hpp"
#include "spikenav/policynet/policy.hpp"

namespace spikenav::ppo {

struct Transition {
  policy::ObservationMatrix obs;
  policy::Vec2d pre_image{};
  // Pre-image Gaussian log-density under the behaviour policy.
  double log_prob = 0.0;
  double reward = 0.0;
  double value = 0.0;
  bool done = false;
};

struct EpisodeSummary {
  env::Outcome outcome = env::Outcome::kTimeout;
  double episode_return = 0.0;
  int length = 0;
};

struct RolloutBuffer {
  std::size_t capacity = 0;
  std::vector<Transition> steps;
  // V(s_T) of the state after the last record, 0 if that record ended an episode.
  double bootstrap_value = 0.0;
  // Filled by compute_advantages.
  std::vector<double> advantages;
  std::vector<double> returns;
  // Episodes that finished while this buffer was filled.
  std::vector<EpisodeSummary> episodes;

  bool full() const { return steps.size() == capacity; }
  double mean_reward() const;
};

// Derives independent stream seeds from one master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// One environment plus its episode bookkeeping. Episode i is reset with
// derive_seed(seed, i).
class EnvRunner {
 public:
  EnvRunner(env::ScenarioConfig scenario, env::EnvConfig config, std::uint64_t seed);

  env::CrowdEnv& env() { return env_; }
  const env::Observation& observation() const { return obs_; }
  policy::ObservationMatrix observation_matrix() const;
  policy::ActionBounds bounds() const;
  // Steps the env, resets it on termination. Returns the reward and done flag.
  std::pair<env::StepResult, bool> advance(const env::Action& action, std::vector<EpisodeSummary>* finished);
  std::uint64_t episodes_started() const { return episode_; }

 private:
  void reset();

  env::CrowdEnv env_;
  std::uint64_t seed_;
  std::uint64_t episode_ = 0;
  env::Observation obs_;
  double running_return_ = 0.0;
  int running_length_ = 0;
};

// Samples n_steps actions from the policy, auto-resetting finished episodes.
RolloutBuffer collect_rollout(EnvRunner& runner, const policy::SpikingActorCritic& policy, std::size_t n_steps,
                              std::mt19937_64& rng);

// GAE over the buffer; stores raw advantages and returns.
void compute_advantages(RolloutBuffer& buffer, double gamma, double lambda);

}  // namespace spikenav::ppo

#endif  // SPIKENAV_PPOTRAIN_ROLLOUT_HPP_
