#ifndef SPIKENAV_POLICYNET_CHECKPOINT_HPP_
#define SPIKENAV_POLICYNET_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>

#include "spikenav/policynet/policy.hpp"

namespace spikenav::policy {

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr char kCheckpointMagic[8] = {'S', 'N', 'A', 'V', 'C', 'K', 'P', 'T'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

// Layout in docs/checkpoint_format.md.
void save_checkpoint(std::ostream& out, const PolicyParams& params, std::uint32_t history_k);
void save_checkpoint(const std::filesystem::path& path, const PolicyParams& params, std::uint32_t history_k);

struct LoadedCheckpoint {
  PolicyParams params;
  std::uint32_t history_k = 0;
};

LoadedCheckpoint load_checkpoint(std::istream& in);
LoadedCheckpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace spikenav::policy

#endif  // SPIKENAV_POLICYNET_CHECKPOINT_HPP_
