#include "spikenav/harness/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "spikenav/crowdenv/reward.hpp"

namespace spikenav::harness {

double path_length(std::span<const Vec2> trajectory) {
  double total = 0.0;
  for (std::size_t i = 1; i < trajectory.size(); ++i) total += (trajectory[i] - trajectory[i - 1]).norm();
  return total;
}

std::optional<double> detour_ratio(std::span<const Vec2> trajectory, Vec2 goal, Vec2 start,
                                   double goal_tolerance) {
  const double ideal = (goal - start).norm() - goal_tolerance;
  if (!(ideal > 0.0)) return std::nullopt;
  return path_length(trajectory) / ideal;
}

std::size_t proxemic_violations(std::span<const env::AgentState> robot_steps,
                                std::span<const std::vector<env::AgentState>> humans_per_step) {
  if (robot_steps.size() != humans_per_step.size()) {
    throw std::invalid_argument("proxemic_violations: robot and human step counts differ");
  }
  std::size_t count = 0;
  for (std::size_t t = 0; t < robot_steps.size(); ++t) {
    for (const auto& h : humans_per_step[t]) count += env::violates_proxemics(robot_steps[t], h);
  }
  return count;
}

namespace {

MeanStd mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  double m = 0.0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  return {m, std::sqrt(v / static_cast<double>(xs.size()))};
}

}  // namespace

AggregateReport aggregate(std::span<const EpisodeMetrics> metrics) {
  AggregateReport r;
  r.episodes = metrics.size();
  if (metrics.empty()) return r;
  std::size_t goals = 0, collisions = 0, timeouts = 0;
  std::vector<double> drs, sparsity;
  std::map<std::string, std::vector<double>> joules;
  for (const auto& m : metrics) {
    switch (m.outcome) {
      case env::Outcome::kGoal: ++goals; break;
      case env::Outcome::kCollision: ++collisions; break;
      case env::Outcome::kTimeout: ++timeouts; break;
      case env::Outcome::kRunning: throw std::invalid_argument("aggregate: episode still running");
    }
    r.pv_total += m.proxemic_violation_steps;
    if (m.outcome == env::Outcome::kGoal && m.detour_ratio) drs.push_back(*m.detour_ratio);
    sparsity.push_back(m.episode_energy.sparsity());
    for (const auto& dev : m.episode_energy.devices) joules[dev.device].push_back(dev.joules);
  }
  const double n = static_cast<double>(metrics.size());
  r.goal_pct = 100.0 * static_cast<double>(goals) / n;
  r.collision_pct = 100.0 * static_cast<double>(collisions) / n;
  r.timeout_pct = 100.0 * static_cast<double>(timeouts) / n;
  const MeanStd dr = mean_std(drs);
  r.dr_mean = dr.mean;
  r.dr_std = dr.std;
  r.dr_count = drs.size();
  r.sparsity_mean = mean_std(sparsity).mean;
  for (const auto& dev : metrics.front().episode_energy.devices) {
    r.energy.emplace_back(dev.device, mean_std(joules[dev.device]));
  }
  return r;
}

}  // namespace spikenav::harness
