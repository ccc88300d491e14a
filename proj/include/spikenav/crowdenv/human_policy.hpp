#ifndef SPIKENAV_CROWDENV_HUMAN_POLICY_HPP_
#define SPIKENAV_CROWDENV_HUMAN_POLICY_HPP_

#include <span>

#include "spikenav/crowdenv/types.hpp"

namespace spikenav::env {

// Linear social-force walker. Attraction to the goal at v_pref; repulsion from
// every neighbour whose gap is inside this human's proxemic radius, growing
// linearly as the gap closes, with a sidestep to the left of the neighbour.
// A final projection caps the approach speed toward each neighbour at half
// the remaining gap (minus `safety_margin`) per step, so two humans following
// this rule cannot make contact.
struct HumanPolicyParams {
  double repulsion_gain = 1.5;
  double lateral_gain = 0.5;
  double safety_margin = 0.05;
  // Stop radius around the goal; <= 0 means the human's own radius.
  double goal_tolerance = -1.0;
};

Vec2 human_policy_step(const AgentState& human, std::span<const AgentState> neighbours, double dt,
                       const HumanPolicyParams& params = {});

}  // namespace spikenav::env

#endif  // SPIKENAV_CROWDENV_HUMAN_POLICY_HPP_
