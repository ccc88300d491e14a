#ifndef SPIKENAV_PPOTRAIN_RUN_CONFIG_HPP_
#define SPIKENAV_PPOTRAIN_RUN_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <string>

#include "spikenav/crowdenv/env.hpp"
#include "spikenav/policynet/policy.hpp"
#include "spikenav/ppotrain/ppo.hpp"

namespace spikenav::ppo {

struct RunConfig {
  std::string name = "run";
  policy::NeuronKind kind = policy::NeuronKind::kSigmaDelta;
  env::ScenarioConfig scenario;
  env::EnvConfig env;
  PpoConfig ppo;
  // obs_rows is overwritten from env.history_k.
  policy::NetworkShape network;
  policy::InitOptions init;
  std::uint64_t total_steps = 200000;
  // Environment steps per update (the rollout buffer capacity).
  std::size_t n_steps = 256;
  std::uint64_t seed = 0;
  // Empty disables the CSV log and checkpoint files.
  std::filesystem::path output_dir;
  // Write a checkpoint every this many updates (0: final only).
  std::size_t checkpoint_every = 0;

  // Tuned defaults per neuron family: SD 256 steps per update, CUBA 128.
  static RunConfig defaults(policy::NeuronKind kind);
  void validate() const;
};

// Keys: name, neuron ("sd" | "cuba"), scenario (name, path or object), env,
// ppo, network, init, total_steps, n_steps, seed, output_dir,
// checkpoint_every. Missing keys take the per-kind defaults.
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& cfg);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace spikenav::ppo

#endif  // SPIKENAV_PPOTRAIN_RUN_CONFIG_HPP_
