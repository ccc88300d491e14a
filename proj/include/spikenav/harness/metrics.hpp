#ifndef SPIKENAV_HARNESS_METRICS_HPP_
#define SPIKENAV_HARNESS_METRICS_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spikenav/crowdenv/types.hpp"
#include "spikenav/energymeter/energy.hpp"

namespace spikenav::harness {

using env::Vec2;

// Traveled path length over the straight-line distance from start to goal,
// less the goal tolerance (an episode counts as reached once within it).
// Missing when the ideal distance is not positive.
std::optional<double> detour_ratio(std::span<const Vec2> trajectory, Vec2 goal, Vec2 start,
                                   double goal_tolerance = 0.0);

double path_length(std::span<const Vec2> trajectory);

// robot_steps[t] and humans_per_step[t] are the states after step t.
// Counts (step, human) pairs with the robot inside that human's proxemic
// radius (surface gap below r_prox).
std::size_t proxemic_violations(std::span<const env::AgentState> robot_steps,
                                std::span<const std::vector<env::AgentState>> humans_per_step);

struct EpisodeMetrics {
  env::Outcome outcome = env::Outcome::kTimeout;
  int steps = 0;
  double traveled_distance = 0.0;
  double ideal_distance = 0.0;
  std::optional<double> detour_ratio;
  std::size_t proxemic_violation_steps = 0;
  double episode_return = 0.0;
  energy::EnergyReport episode_energy;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

struct AggregateReport {
  std::size_t episodes = 0;
  double goal_pct = 0.0;
  double collision_pct = 0.0;
  double timeout_pct = 0.0;
  std::size_t pv_total = 0;
  // Over goal-reaching episodes only; zero with dr_count == 0.
  double dr_mean = 0.0;
  double dr_std = 0.0;
  std::size_t dr_count = 0;
  double sparsity_mean = 0.0;
  // Per-device episode energy (J), in reference device order.
  std::vector<std::pair<std::string, MeanStd>> energy;

  static constexpr const char* kDetourNote = "DR over goal-reaching episodes only";
};

// Population standard deviations.
AggregateReport aggregate(std::span<const EpisodeMetrics> metrics);

}  // namespace spikenav::harness

#endif  // SPIKENAV_HARNESS_METRICS_HPP_
