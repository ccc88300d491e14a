#include "spikenav/crowdenv/scenario.hpp"

#include <random>
#include <string>

namespace spikenav::env {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kRunning: return "running";
    case Outcome::kGoal: return "goal";
    case Outcome::kCollision: return "collision";
    case Outcome::kTimeout: return "timeout";
  }
  return "unknown";
}

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kCircleInteraction: return "circle_interaction";
    case ScenarioKind::kCircleCrossing: return "circle_crossing";
    case ScenarioKind::kRandom: return "random";
  }
  return "unknown";
}

ScenarioKind scenario_kind_from_string(std::string_view name) {
  if (name == "circle_interaction") return ScenarioKind::kCircleInteraction;
  if (name == "circle_crossing") return ScenarioKind::kCircleCrossing;
  if (name == "random") return ScenarioKind::kRandom;
  throw ScenarioError("unknown scenario kind '" + std::string(name) + "'");
}

ScenarioConfig ScenarioConfig::preset(ScenarioKind kind) {
  ScenarioConfig cfg;
  cfg.kind = kind;
  cfg.n_agents = kind == ScenarioKind::kRandom ? 10 : 8;
  return cfg;
}

void ScenarioConfig::validate() const {
  if (n_agents < 2) throw ScenarioError("scenario needs at least 2 agents");
  if (!(speed_range.lo > 0.0) || speed_range.hi < speed_range.lo) {
    throw ScenarioError("speed range must be positive and ordered");
  }
  if (prox_range.lo < 0.0 || prox_range.hi < prox_range.lo) {
    throw ScenarioError("proxemic range must be nonnegative and ordered");
  }
  if (!(agent_radius > 0.0)) throw ScenarioError("agent radius must be positive");
  if (!(circle_radius > 0.0) || !(arena_size > 0.0)) {
    throw ScenarioError("arena dimensions must be positive");
  }
}

namespace {

constexpr int kMaxAttempts = 100;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Placer {
 public:
  Placer(const ScenarioConfig& cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  bool clear_of(Vec2 p, const std::vector<Vec2>& placed) const {
    const double min_center = 2.0 * cfg_.agent_radius + cfg_.min_separation;
    for (Vec2 q : placed) {
      if ((p - q).norm() < min_center) return false;
    }
    return true;
  }

  std::vector<std::pair<Vec2, Vec2>> circle_interaction() {
    const int n = cfg_.n_agents;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const double base = uniform(0.0, kTwoPi);
      std::vector<Vec2> starts, goals;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        const double angle = base + kTwoPi * i / n;
        const Vec2 dir{std::cos(angle), std::sin(angle)};
        const Vec2 start = dir * cfg_.circle_radius + jitter();
        const Vec2 goal = dir * -cfg_.circle_radius + jitter();
        ok = clear_of(start, starts) && clear_of(goal, goals);
        starts.push_back(start);
        goals.push_back(goal);
      }
      if (ok) return zip(starts, goals);
    }
    throw ScenarioError("circle_interaction: no feasible placement");
  }

  std::vector<std::pair<Vec2, Vec2>> circle_crossing() {
    std::vector<Vec2> starts, goals;
    for (int i = 0; i < cfg_.n_agents; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
        const double angle = uniform(0.0, kTwoPi);
        const double goal_angle =
            angle + std::numbers::pi + uniform(-cfg_.crossing_goal_jitter, cfg_.crossing_goal_jitter);
        const Vec2 start{cfg_.circle_radius * std::cos(angle), cfg_.circle_radius * std::sin(angle)};
        const Vec2 goal{cfg_.circle_radius * std::cos(goal_angle),
                        cfg_.circle_radius * std::sin(goal_angle)};
        if (clear_of(start, starts) && clear_of(goal, goals)) {
          starts.push_back(start);
          goals.push_back(goal);
          placed = true;
        }
      }
      if (!placed) throw ScenarioError("circle_crossing: no feasible placement for agent " + std::to_string(i));
    }
    return zip(starts, goals);
  }

  std::vector<std::pair<Vec2, Vec2>> random_square() {
    const double half = 0.5 * cfg_.arena_size;
    std::vector<Vec2> starts, goals;
    for (int i = 0; i < cfg_.n_agents; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
        const Vec2 start{uniform(-half, half), uniform(-half, half)};
        const Vec2 goal{uniform(-half, half), uniform(-half, half)};
        if ((goal - start).norm() >= cfg_.min_travel && clear_of(start, starts) &&
            clear_of(goal, goals)) {
          starts.push_back(start);
          goals.push_back(goal);
          placed = true;
        }
      }
      if (!placed) throw ScenarioError("random: no feasible placement for agent " + std::to_string(i));
    }
    return zip(starts, goals);
  }

 private:
  Vec2 jitter() { return {uniform(-cfg_.jitter, cfg_.jitter), uniform(-cfg_.jitter, cfg_.jitter)}; }

  static std::vector<std::pair<Vec2, Vec2>> zip(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
    std::vector<std::pair<Vec2, Vec2>> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.emplace_back(a[i], b[i]);
    return out;
  }

  const ScenarioConfig& cfg_;
  std::mt19937_64 rng_;
};

}  // namespace

WorldState generate_world(const ScenarioConfig& cfg, std::uint64_t seed, double dt) {
  cfg.validate();
  if (!(dt > 0.0)) throw ScenarioError("dt must be positive");
  Placer placer(cfg, seed);

  std::vector<std::pair<Vec2, Vec2>> layout;
  switch (cfg.kind) {
    case ScenarioKind::kCircleInteraction: layout = placer.circle_interaction(); break;
    case ScenarioKind::kCircleCrossing: layout = placer.circle_crossing(); break;
    case ScenarioKind::kRandom: layout = placer.random_square(); break;
  }

  WorldState world;
  world.dt = dt;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    AgentState agent;
    agent.position = layout[i].first;
    agent.goal = layout[i].second;
    agent.radius = cfg.agent_radius;
    const Vec2 to_goal = agent.goal - agent.position;
    agent.heading = std::atan2(to_goal.y, to_goal.x);
    agent.psi_pref = agent.heading;
    agent.v_pref = placer.uniform(cfg.speed_range.lo, cfg.speed_range.hi);
    if (i == 0) {
      world.robot = agent;
    } else {
      agent.r_prox = placer.uniform(cfg.prox_range.lo, cfg.prox_range.hi);
      world.humans.push_back(agent);
    }
  }
  return world;
}

}  // namespace spikenav::env
