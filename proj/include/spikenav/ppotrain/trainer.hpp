#ifndef SPIKENAV_PPOTRAIN_TRAINER_HPP_
#define SPIKENAV_PPOTRAIN_TRAINER_HPP_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <vector>

#include "spikenav/ppotrain/run_config.hpp"

namespace spikenav::ppo {

// One row of the training curve, written after every update.
struct UpdateRecord {
  std::size_t update = 0;
  std::uint64_t env_steps = 0;
  double mean_step_reward = 0.0;
  // Over episodes that finished during this rollout; NaN when none did.
  double mean_episode_return = 0.0;
  std::size_t episodes = 0;
  double goal_rate = 0.0;
  double collision_rate = 0.0;
  UpdateStats stats;
};

struct TrainingResult {
  policy::PolicyParams params;
  std::vector<UpdateRecord> curve;
  std::filesystem::path final_checkpoint;  // empty without output_dir
};

using UpdateCallback = std::function<void(const UpdateRecord&)>;

// Alternates rollout collection and PPO updates until total_steps. Fully
// determined by the config (including its seed).
TrainingResult train(const RunConfig& cfg, const UpdateCallback& on_update = {});

void write_curve_header(std::ostream& out);
void write_curve_row(std::ostream& out, const UpdateRecord& rec);

}  // namespace spikenav::ppo

#endif  // SPIKENAV_PPOTRAIN_TRAINER_HPP_
