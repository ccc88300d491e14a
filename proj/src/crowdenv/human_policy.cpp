#include "spikenav/crowdenv/human_policy.hpp"

#include <algorithm>

namespace spikenav::env {

namespace {

constexpr double kTiny = 1e-12;
constexpr int kProjectionPasses = 8;

}  // namespace

Vec2 human_policy_step(const AgentState& human, std::span<const AgentState> neighbours, double dt,
                       const HumanPolicyParams& params) {
  const Vec2 to_goal = human.goal - human.position;
  const double goal_dist = to_goal.norm();
  const double tolerance = params.goal_tolerance > 0.0 ? params.goal_tolerance : human.radius;
  if (goal_dist <= tolerance) return {};

  const Vec2 goal_dir = to_goal * (1.0 / goal_dist);
  Vec2 v = goal_dir * human.v_pref;

  for (const AgentState& other : neighbours) {
    const double gap = surface_distance(human, other);
    if (!(gap < human.r_prox)) continue;
    const Vec2 offset = human.position - other.position;
    const double centre_dist = offset.norm();
    const Vec2 away = centre_dist > kTiny ? offset * (1.0 / centre_dist) : goal_dir.left();
    const double magnitude =
        params.repulsion_gain * human.v_pref * std::min(1.0, (human.r_prox - gap) / human.r_prox);
    const Vec2 toward = away * -1.0;
    v += away * magnitude + toward.left() * (params.lateral_gain * magnitude);
  }

  const double speed = v.norm();
  if (speed > human.v_pref) v = v * (human.v_pref / speed);

  auto violated = [&](const AgentState& other, double& excess, Vec2& toward) {
    const Vec2 offset = other.position - human.position;
    const double centre_dist = offset.norm();
    if (centre_dist <= kTiny) return false;
    toward = offset * (1.0 / centre_dist);
    const double budget =
        std::max(0.0, surface_distance(human, other) - params.safety_margin) / (2.0 * dt);
    excess = v.dot(toward) - budget;
    return excess > 0.0;
  };

  for (int pass = 0; pass < kProjectionPasses; ++pass) {
    bool clean = true;
    for (const AgentState& other : neighbours) {
      double excess = 0.0;
      Vec2 toward;
      if (violated(other, excess, toward)) {
        v = v - toward * excess;
        clean = false;
      }
    }
    if (clean) return v;
  }
  // Projections did not settle on a velocity satisfying every neighbour;
  // standing still always does.
  for (const AgentState& other : neighbours) {
    double excess = 0.0;
    Vec2 toward;
    if (violated(other, excess, toward) && excess > 1e-12) return {};
  }
  return v;
}

}  // namespace spikenav::env
