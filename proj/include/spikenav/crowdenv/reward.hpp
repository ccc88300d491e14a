#ifndef SPIKENAV_CROWDENV_REWARD_HPP_
#define SPIKENAV_CROWDENV_REWARD_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "spikenav/crowdenv/types.hpp"

namespace spikenav::env {

struct RewardConfig {
  double r_g = 4.0;
  double r_c = 4.0;
  double r_time = 4.0;
  double r_gd1 = 0.1;
  double r_gd2 = 0.2;
  double r_v = 0.058;
  double r_prox_pen = 1.1;
  double r_si = 2.0;
  double lambda_default = 1.0;

  void validate() const;
};

struct RewardBreakdown {
  double navigation = 0.0;
  double social = 0.0;
  double total = 0.0;
  // Goal-distance decrease over the step (positive = progress).
  double progress = 0.0;
  std::size_t humans_in_range = 0;
  std::size_t proxemic_violations = 0;

  std::vector<std::pair<std::string, double>> components() const {
    return {{"navigation", navigation}, {"social", social}};
  }
};

// Gap between robot and human bodies that counts as a proxemic violation.
bool violates_proxemics(const AgentState& robot, const AgentState& human);

// Navigation term: goal / collision / timeout, else progress reward or
// regress penalty on the change in goal distance. Social term: mean over
// humans within r_si (centre distance) of lambda * (-r_v |v_i - v_0| -
// r_prox_pen * [inside their proxemic radius]); zero when none are in range.
RewardBreakdown compute_reward(const WorldState& prev, const WorldState& now, Outcome outcome,
                               const RewardConfig& cfg);

}  // namespace spikenav::env

#endif  // SPIKENAV_CROWDENV_REWARD_HPP_
