#ifndef SPIKENAV_CROWDENV_SCENARIO_HPP_
#define SPIKENAV_CROWDENV_SCENARIO_HPP_

#include <cstdint>
#include <string_view>

#include "spikenav/crowdenv/types.hpp"

namespace spikenav::env {

enum class ScenarioKind { kCircleInteraction, kCircleCrossing, kRandom };

std::string_view to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(std::string_view name);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::kCircleInteraction;
  // Robot included.
  int n_agents = 8;
  Range speed_range{0.5, 1.0};
  Range prox_range{0.3, 0.7};
  double agent_radius = 0.3;
  double circle_radius = 4.0;
  double arena_size = 10.0;
  // Extra clearance on top of the summed radii between spawn and goal points.
  double min_separation = 0.2;
  // Positional jitter (m) for circle_interaction, angular jitter of the goal
  // (rad) for circle_crossing.
  double jitter = 0.1;
  double crossing_goal_jitter = 0.5;
  double min_travel = 4.0;
  std::uint64_t seed = 0;

  // 8 / 8 / 10 agents for the three stock scenarios.
  static ScenarioConfig preset(ScenarioKind kind);
  void validate() const;
};

// Places robot (index 0 of the layout) and humans for one episode. The
// robot's r_prox is 0; all agents start at rest facing their goal.
WorldState generate_world(const ScenarioConfig& cfg, std::uint64_t seed, double dt);

}  // namespace spikenav::env

#endif  // SPIKENAV_CROWDENV_SCENARIO_HPP_
