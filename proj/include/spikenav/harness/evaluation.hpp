#ifndef SPIKENAV_HARNESS_EVALUATION_HPP_
#define SPIKENAV_HARNESS_EVALUATION_HPP_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "spikenav/crowdenv/env.hpp"
#include "spikenav/harness/metrics.hpp"
#include "spikenav/policynet/policy.hpp"

namespace spikenav::harness {

struct TrajectoryStep {
  int t = 0;
  env::AgentState robot;
  std::vector<env::AgentState> humans;
  env::Action action;
  double reward = 0.0;
};

// Per inference: the T x width activity of each energy layer.
struct InferenceRasters {
  energy::RasterSet layers;
};

struct EpisodeTrace {
  std::size_t episode = 0;
  std::uint64_t seed = 0;
  env::Outcome outcome = env::Outcome::kRunning;
  // steps[0] is the initial state (t = 0, no action yet).
  std::vector<TrajectoryStep> steps;
  std::vector<InferenceRasters> rasters;
};

struct EvalOptions {
  std::size_t n_episodes = 100;
  std::uint64_t seed = 0;
  bool keep_traces = false;
  bool keep_rasters = false;
};

struct EvalResult {
  std::vector<EpisodeMetrics> metrics;
  std::vector<EpisodeTrace> traces;
  AggregateReport report;
};

// Deterministic rollouts with the policy mean. Episode i is seeded with
// ppo::derive_seed(options.seed, i).
EvalResult run_episodes(const policy::SpikingActorCritic& policy, const env::ScenarioConfig& scenario,
                        const env::EnvConfig& env_cfg, const EvalOptions& options);

// Loads the checkpoint first; its history length overrides env_cfg.history_k.
// Throws CheckpointError when the observation width does not match.
EvalResult run_episodes(const std::filesystem::path& checkpoint, const env::ScenarioConfig& scenario,
                        env::EnvConfig env_cfg, const EvalOptions& options);

}  // namespace spikenav::harness

#endif  // SPIKENAV_HARNESS_EVALUATION_HPP_
