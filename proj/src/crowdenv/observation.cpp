#include "spikenav/crowdenv/observation.hpp"

#include <algorithm>
#include <stdexcept>

namespace spikenav::env {

std::vector<double> HumanObservation::flatten() const {
  std::vector<double> out{radius, combined_radius};
  out.reserve(2 + TemporalBlock::kSize * history.size());
  for (const auto& b : history) {
    out.insert(out.end(), {b.d, b.dp.x, b.dp.y, b.dv.x, b.dv.y});
  }
  return out;
}

TemporalBlock relative_block(const AgentState& robot, const AgentState& human) {
  TemporalBlock b;
  b.dp = robot.position - human.position;
  b.dv = robot.velocity - human.velocity;
  b.d = b.dp.norm();
  return b;
}

void ObservationHistory::record(const WorldState& world) {
  if (blocks_.size() != world.humans.size()) {
    blocks_.assign(world.humans.size(), {});
  }
  for (std::size_t i = 0; i < world.humans.size(); ++i) {
    auto& q = blocks_[i];
    q.push_front(relative_block(world.robot, world.humans[i]));
    while (q.size() > k_ + 1) q.pop_back();
  }
}

std::vector<TemporalBlock> ObservationHistory::window(std::size_t human) const {
  if (human >= blocks_.size() || blocks_[human].empty()) {
    throw std::out_of_range("no observation history for human " + std::to_string(human));
  }
  const auto& q = blocks_[human];
  std::vector<TemporalBlock> out(q.begin(), q.end());
  while (out.size() < k_ + 1) out.push_back(q.back());
  return out;
}

Observation build_observation(const WorldState& world, const ObservationHistory& history,
                              bool egocentric) {
  const AgentState& robot = world.robot;
  const Vec2 dp_g = robot.goal - robot.position;
  double axis = 0.0;
  if (egocentric) axis = dp_g.norm() > 0.0 ? std::atan2(dp_g.y, dp_g.x) : robot.heading;
  auto to_frame = [axis](Vec2 v) { return axis == 0.0 ? v : v.rotated(-axis); };

  Observation obs;
  obs.robot.dp_g = to_frame(dp_g);
  obs.robot.d_g = dp_g.norm();
  obs.robot.heading = egocentric ? wrap_angle(robot.heading - axis) : robot.heading;
  obs.robot.v_pref = robot.v_pref;
  obs.robot.radius = robot.radius;

  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(world.humans.size());
  for (std::size_t i = 0; i < world.humans.size(); ++i) {
    order.emplace_back((robot.position - world.humans[i].position).norm(), i);
  }
  std::sort(order.begin(), order.end());

  for (const auto& [dist, i] : order) {
    const AgentState& human = world.humans[i];
    HumanObservation h;
    h.agent_index = i;
    h.radius = human.radius;
    h.combined_radius = human.radius + robot.radius;
    h.history = history.window(i);
    for (auto& b : h.history) {
      b.dp = to_frame(b.dp);
      b.dv = to_frame(b.dv);
    }
    obs.humans.push_back(std::move(h));
  }
  return obs;
}

}  // namespace spikenav::env
