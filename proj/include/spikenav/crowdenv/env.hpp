#ifndef SPIKENAV_CROWDENV_ENV_HPP_
#define SPIKENAV_CROWDENV_ENV_HPP_

#include <cstdint>
#include <numbers>

#include "spikenav/crowdenv/human_policy.hpp"
#include "spikenav/crowdenv/observation.hpp"
#include "spikenav/crowdenv/reward.hpp"
#include "spikenav/crowdenv/scenario.hpp"

namespace spikenav::env {

struct EnvConfig {
  double dt = 0.25;
  int max_steps = 200;
  std::size_t history_k = 2;
  double d_heading_max = std::numbers::pi / 6.0;
  // <= 0 means the robot radius.
  double goal_tolerance = -1.0;
  bool egocentric = true;
  HumanPolicyParams humans;
  RewardConfig reward;

  std::size_t observation_rows() const { return env::observation_rows(history_k); }
  void validate() const;
};

struct StepInfo {
  bool action_clipped = false;
  Action applied;
  // Sign convention of the progress term: positive when the goal distance
  // shrinks.
  static constexpr const char* kProgressConvention = "progress = d_g(t-1) - d_g(t)";
};

struct StepResult {
  Observation observation;
  double reward = 0.0;
  RewardBreakdown breakdown;
  Outcome outcome = Outcome::kRunning;
  StepInfo info;
};

class CrowdEnv {
 public:
  CrowdEnv(ScenarioConfig scenario, EnvConfig config);

  Observation reset(std::uint64_t seed);
  StepResult step(const Action& action);

  const WorldState& world() const { return world_; }
  const ScenarioConfig& scenario() const { return scenario_; }
  const EnvConfig& config() const { return config_; }
  Outcome outcome() const { return outcome_; }
  double goal_tolerance() const;
  // Bounds of the robot action for the current episode.
  Action action_low() const { return {0.0, -config_.d_heading_max}; }
  Action action_high() const { return {world_.robot.v_pref, config_.d_heading_max}; }

  Observation observe() const;

 private:
  ScenarioConfig scenario_;
  EnvConfig config_;
  WorldState world_;
  ObservationHistory history_;
  Outcome outcome_ = Outcome::kRunning;
  bool started_ = false;
};

// Advances the humans alone by one step; humans see each other (and the
// robot when `include_robot`).
void step_humans(WorldState& world, const HumanPolicyParams& params, bool include_robot);

}  // namespace spikenav::env

#endif  // SPIKENAV_CROWDENV_ENV_HPP_
