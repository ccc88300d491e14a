#ifndef SPIKENAV_CROWDENV_OBSERVATION_HPP_
#define SPIKENAV_CROWDENV_OBSERVATION_HPP_

#include <array>
#include <cstddef>
#include <deque>
#include <vector>

#include "spikenav/crowdenv/types.hpp"

namespace spikenav::env {

// [d_g, dp_g.x, dp_g.y, heading, v_pref, radius]
struct RobotObservation {
  static constexpr std::size_t kSize = 6;

  double d_g = 0.0;
  Vec2 dp_g;
  double heading = 0.0;
  double v_pref = 0.0;
  double radius = 0.0;

  std::array<double, kSize> to_array() const { return {d_g, dp_g.x, dp_g.y, heading, v_pref, radius}; }
};

// One time slice of the robot-relative view of a human.
struct TemporalBlock {
  static constexpr std::size_t kSize = 5;

  double d = 0.0;  // |dp|
  Vec2 dp;         // p_robot - p_human
  Vec2 dv;         // v_robot - v_human
};

struct HumanObservation {
  std::size_t agent_index = 0;
  double radius = 0.0;
  double combined_radius = 0.0;
  std::vector<TemporalBlock> history;  // newest first, k + 1 blocks

  static std::size_t size_for(std::size_t k) { return 2 + TemporalBlock::kSize * (k + 1); }
  std::vector<double> flatten() const;
};

struct Observation {
  RobotObservation robot;
  std::vector<HumanObservation> humans;  // closest first
};

// Rows of the stacked observation matrix for history length k.
inline std::size_t observation_rows(std::size_t k) {
  return RobotObservation::kSize + HumanObservation::size_for(k);
}

// Last k + 1 world-frame temporal blocks per human.
class ObservationHistory {
 public:
  explicit ObservationHistory(std::size_t k = 2) : k_(k) {}

  void clear() { blocks_.clear(); }
  // Appends the current relative view of every human.
  void record(const WorldState& world);

  std::size_t k() const { return k_; }
  // Newest first, padded by repeating the oldest available block.
  std::vector<TemporalBlock> window(std::size_t human) const;

 private:
  std::size_t k_;
  std::vector<std::deque<TemporalBlock>> blocks_;
};

TemporalBlock relative_block(const AgentState& robot, const AgentState& human);

// With `egocentric`, relative vectors are rotated into a robot-centred frame
// whose x axis points at the goal, and the heading is reported relative to
// that axis (the world heading when the robot sits on its goal). Norms are
// unaffected. Humans are sorted by current
// centre distance, ties by agent index.
Observation build_observation(const WorldState& world, const ObservationHistory& history,
                              bool egocentric = true);

}  // namespace spikenav::env

#endif  // SPIKENAV_CROWDENV_OBSERVATION_HPP_
