#include "spikenav/crowdenv/reward.hpp"

namespace spikenav::env {

void RewardConfig::validate() const {
  for (double c : {r_g, r_c, r_time, r_gd1, r_gd2, r_v, r_prox_pen, lambda_default}) {
    if (c < 0.0) throw std::invalid_argument("reward coefficients must be nonnegative");
  }
  if (!(r_si > 0.0)) throw std::invalid_argument("r_si must be positive");
}

bool violates_proxemics(const AgentState& robot, const AgentState& human) {
  return surface_distance(robot, human) < human.r_prox;
}

RewardBreakdown compute_reward(const WorldState& prev, const WorldState& now, Outcome outcome,
                               const RewardConfig& cfg) {
  RewardBreakdown out;
  const double d_prev = (prev.robot.goal - prev.robot.position).norm();
  const double d_now = (now.robot.goal - now.robot.position).norm();
  out.progress = d_prev - d_now;

  switch (outcome) {
    case Outcome::kGoal: out.navigation = cfg.r_g; break;
    case Outcome::kCollision: out.navigation = -cfg.r_c; break;
    case Outcome::kTimeout: out.navigation = -cfg.r_time; break;
    case Outcome::kRunning:
      if (out.progress > 0.0) {
        out.navigation = cfg.r_gd1 * out.progress;
      } else if (out.progress < 0.0) {
        out.navigation = -cfg.r_gd2 * -out.progress;
      }
      break;
  }

  double social_sum = 0.0;
  for (const AgentState& human : now.humans) {
    if (!((human.position - now.robot.position).norm() < cfg.r_si)) continue;
    ++out.humans_in_range;
    double r_i = -cfg.r_v * (human.velocity - now.robot.velocity).norm();
    if (violates_proxemics(now.robot, human)) {
      ++out.proxemic_violations;
      r_i -= cfg.r_prox_pen;
    }
    social_sum += cfg.lambda_default * r_i;
  }
  if (out.humans_in_range > 0) out.social = social_sum / static_cast<double>(out.humans_in_range);
  out.total = out.navigation + out.social;
  return out;
}

}  // namespace spikenav::env
