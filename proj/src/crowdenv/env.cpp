#include "spikenav/crowdenv/env.hpp"

#include <algorithm>
#include <cmath>

namespace spikenav::env {

void EnvConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  if (!(d_heading_max > 0.0)) throw std::invalid_argument("d_heading_max must be positive");
  reward.validate();
}

CrowdEnv::CrowdEnv(ScenarioConfig scenario, EnvConfig config)
    : scenario_(std::move(scenario)), config_(std::move(config)), history_(config_.history_k) {
  scenario_.validate();
  config_.validate();
}

double CrowdEnv::goal_tolerance() const {
  return config_.goal_tolerance > 0.0 ? config_.goal_tolerance : world_.robot.radius;
}

Observation CrowdEnv::reset(std::uint64_t seed) {
  world_ = generate_world(scenario_, seed, config_.dt);
  outcome_ = Outcome::kRunning;
  started_ = true;
  history_.clear();
  history_.record(world_);
  return observe();
}

Observation CrowdEnv::observe() const {
  return build_observation(world_, history_, config_.egocentric);
}

void step_humans(WorldState& world, const HumanPolicyParams& params, bool include_robot) {
  std::vector<Vec2> velocities(world.humans.size());
  std::vector<AgentState> neighbours;
  for (std::size_t i = 0; i < world.humans.size(); ++i) {
    neighbours.clear();
    if (include_robot) neighbours.push_back(world.robot);
    for (std::size_t j = 0; j < world.humans.size(); ++j) {
      if (j != i) neighbours.push_back(world.humans[j]);
    }
    velocities[i] = human_policy_step(world.humans[i], neighbours, world.dt, params);
  }
  for (std::size_t i = 0; i < world.humans.size(); ++i) {
    AgentState& h = world.humans[i];
    h.velocity = velocities[i];
    if (h.velocity.norm() > 0.0) h.heading = std::atan2(h.velocity.y, h.velocity.x);
    h.position += h.velocity * world.dt;
  }
}

StepResult CrowdEnv::step(const Action& action) {
  if (!started_ || outcome_ != Outcome::kRunning) {
    throw std::logic_error("step() called without a running episode; call reset()");
  }
  if (!std::isfinite(action.speed) || !std::isfinite(action.d_heading)) {
    throw std::invalid_argument("non-finite robot action");
  }
  StepResult result;
  const Action lo = action_low(), hi = action_high();
  result.info.applied = {std::clamp(action.speed, lo.speed, hi.speed),
                         std::clamp(action.d_heading, lo.d_heading, hi.d_heading)};
  result.info.action_clipped = result.info.applied.speed != action.speed ||
                               result.info.applied.d_heading != action.d_heading;

  const WorldState prev = world_;
  // Humans react to the pre-step world, including the robot.
  step_humans(world_, config_.humans, true);

  AgentState& robot = world_.robot;
  robot.heading = wrap_angle(robot.heading + result.info.applied.d_heading);
  robot.velocity = Vec2{std::cos(robot.heading), std::sin(robot.heading)} * result.info.applied.speed;
  robot.position += robot.velocity * world_.dt;
  ++world_.tick;

  Outcome outcome = Outcome::kRunning;
  if ((robot.goal - robot.position).norm() <= goal_tolerance()) {
    outcome = Outcome::kGoal;
  } else if (std::any_of(world_.humans.begin(), world_.humans.end(),
                         [&](const AgentState& h) { return surface_distance(robot, h) <= 0.0; })) {
    outcome = Outcome::kCollision;
  } else if (world_.tick >= config_.max_steps) {
    outcome = Outcome::kTimeout;
  }
  outcome_ = outcome;

  result.breakdown = compute_reward(prev, world_, outcome, config_.reward);
  result.reward = result.breakdown.total;
  result.outcome = outcome;
  history_.record(world_);
  result.observation = observe();
  return result;
}

}  // namespace spikenav::env
