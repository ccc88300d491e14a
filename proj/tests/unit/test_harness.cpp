#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "spikenav/harness/cli.hpp"
#include "spikenav/harness/evaluation.hpp"
#include "spikenav/harness/exports.hpp"
#include "spikenav/policynet/checkpoint.hpp"

using namespace spikenav;
using namespace spikenav::harness;

namespace {

env::AgentState at(Vec2 p, double r_prox = 0.0) {
  env::AgentState a;
  a.position = p;
  a.r_prox = r_prox;
  return a;
}

EpisodeMetrics episode(env::Outcome o, std::optional<double> dr, std::size_t pv) {
  EpisodeMetrics m;
  m.outcome = o;
  m.detour_ratio = dr;
  m.proxemic_violation_steps = pv;
  return m;
}

env::ScenarioConfig small_scenario() {
  auto sc = env::ScenarioConfig::preset(env::ScenarioKind::kCircleInteraction);
  sc.n_agents = 3;
  return sc;
}

policy::SpikingActorCritic small_policy() {
  policy::NetworkShape shape;
  shape.sfe_width = shape.san_width = shape.critic_width = 16;
  return policy::SpikingActorCritic(policy::PolicyParams::initialize(policy::NeuronKind::kSigmaDelta, shape));
}

int run_cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"spikenav"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("detour ratio geometry") {
  std::vector<Vec2> straight;
  for (int i = 0; i <= 10; ++i) straight.push_back({0.4 * i, 0.0});
  CHECK(std::abs(*detour_ratio(straight, {4, 0}, {0, 0}) - 1.0) <= 1e-9);
  std::vector<Vec2> triangle{{0, 0}, {3, 0}, {3, 4}};
  CHECK(*detour_ratio(triangle, {3, 4}, {0, 0}) == 1.4);
  CHECK_FALSE(detour_ratio(triangle, {0, 0}, {0, 0}).has_value());
  CHECK(path_length(triangle) == 7.0);
}

TEST_CASE("proxemic violations count step-human pairs") {
  const env::AgentState far = at({10, 10}, 0.5);
  const env::AgentState near_a = at({0.8, 0}, 0.5);  // gap 0.2 < 0.5
  const env::AgentState near_b = at({0, 0.9}, 0.5);  // gap 0.3 < 0.5
  std::vector<env::AgentState> robot(3, at({0, 0}));
  SUBCASE("never inside") {
    std::vector<std::vector<env::AgentState>> hs(3, {far});
    CHECK(proxemic_violations(robot, hs) == 0);
  }
  SUBCASE("three steps inside one radius") {
    std::vector<std::vector<env::AgentState>> hs(3, {near_a, far});
    CHECK(proxemic_violations(robot, hs) == 3);
  }
  SUBCASE("inside two radii for one step") {
    std::vector<std::vector<env::AgentState>> hs{{near_a, near_b}, {far}, {far}};
    CHECK(proxemic_violations(robot, hs) == 2);
  }
  std::vector<std::vector<env::AgentState>> short_hs(2);
  CHECK_THROWS(proxemic_violations(robot, short_hs));
}

TEST_CASE("aggregate of four scripted episodes") {
  std::vector<EpisodeMetrics> ms{episode(env::Outcome::kGoal, 1.0, 2), episode(env::Outcome::kGoal, 1.4, 0),
                                 episode(env::Outcome::kCollision, 3.0, 5), episode(env::Outcome::kTimeout, {}, 1)};
  const AggregateReport r = aggregate(ms);
  CHECK(r.episodes == 4);
  CHECK(r.goal_pct == 50.0);
  CHECK(r.collision_pct == 25.0);
  CHECK(r.timeout_pct == 25.0);
  CHECK(r.pv_total == 8);
  CHECK(r.dr_count == 2);
  CHECK(r.dr_mean == doctest::Approx(1.2));
  CHECK(r.dr_std == doctest::Approx(0.2));
  CHECK(r.goal_pct + r.collision_pct + r.timeout_pct == doctest::Approx(100.0));
  CHECK(aggregate({}).episodes == 0);
}

TEST_CASE("evaluation is deterministic and exports line up") {
  const auto net = small_policy();
  EvalOptions o;
  o.n_episodes = 3;
  o.seed = 5;
  o.keep_traces = true;
  o.keep_rasters = true;
  const EvalResult a = run_episodes(net, small_scenario(), {}, o);
  const EvalResult b = run_episodes(net, small_scenario(), {}, o);
  REQUIRE(a.metrics.size() == 3);
  CHECK(to_json(a.report) == to_json(b.report));
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(a.traces[i].steps.size() == b.traces[i].steps.size());
    for (std::size_t t = 0; t < a.traces[i].steps.size(); ++t)
      CHECK(a.traces[i].steps[t].robot == b.traces[i].steps[t].robot);
    CHECK(a.traces[i].rasters.size() + 1 == a.traces[i].steps.size());
    CHECK(a.metrics[i].episode_energy.devices.size() == 6);
  }
  std::ostringstream csv;
  write_energy_csv(csv, "circle_interaction", a.metrics);
  std::istringstream lines(csv.str());
  std::string line;
  int n = 0;
  std::getline(lines, line);
  CHECK(line == "scenario,episode,device,joules,synops,sparsity");
  while (std::getline(lines, line)) ++n;
  CHECK(n == 3 * 6);
  std::ostringstream traj;
  write_trajectories_jsonl(traj, a.traces);
  std::istringstream tl(traj.str());
  n = 0;
  while (std::getline(tl, line)) {
    CHECK(nlohmann::json::parse(line).contains("outcome"));
    ++n;
  }
  CHECK(n == 3);
}

TEST_CASE("checkpoint evaluation rejects a mismatched history") {
  const auto dir = std::filesystem::temp_directory_path() / "spikenav_harness_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "p.ckpt";
  policy::save_checkpoint(path, small_policy().params(), 2);
  EvalOptions o;
  o.n_episodes = 1;
  env::EnvConfig ec;
  ec.history_k = 4;
  CHECK_NOTHROW(run_episodes(path, small_scenario(), ec, o));
  policy::save_checkpoint(path, small_policy().params(), 3);
  CHECK_THROWS_AS(run_episodes(path, small_scenario(), ec, o), policy::CheckpointError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli exit codes") {
  const auto dir = std::filesystem::temp_directory_path() / "spikenav_cli_test";
  std::filesystem::create_directories(dir);
  const auto ckpt = (dir / "p.ckpt").string();
  policy::save_checkpoint(ckpt, small_policy().params(), 2);
  CHECK(run_cli({"--help"}) == 0);
  CHECK(run_cli({"eval", "--help"}) == 0);
  CHECK(run_cli({"bogus"}) != 0);
  CHECK(run_cli({"eval", (dir / "missing.ckpt").string()}) != 0);
  CHECK(run_cli({"eval", ckpt, "--scenario", "nowhere"}) != 0);
  const auto csv = (dir / "e.csv").string();
  CHECK(run_cli({"energy", ckpt, "--scenario", "circle_interaction", "--episodes", "2", "--csv", csv}) == 0);
  CHECK(std::filesystem::exists(csv));
  const auto traj = (dir / "t.jsonl").string();
  CHECK(run_cli({"export-traj", ckpt, "--episodes", "1", "--out", traj}) == 0);
  CHECK(std::filesystem::file_size(traj) > 0);
  std::filesystem::remove_all(dir);
}
