#ifndef SPIKENAV_PPOTRAIN_GAE_HPP_
#define SPIKENAV_PPOTRAIN_GAE_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace spikenav::ppo {

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;  // advantages + values, before normalization
};

// delta_t = r_t + gamma * V_{t+1} * (1 - done_t) - V_t
// A_t = delta_t + gamma * lambda * (1 - done_t) * A_{t+1}
// V_T is `bootstrap_value`. done_t marks that step t ended an episode.
GaeResult compute_gae(std::span<const double> rewards, std::span<const double> values,
                      std::span<const std::uint8_t> dones, double bootstrap_value, double gamma,
                      double lambda);

// Mean 0, unit (population) standard deviation. A constant input maps to zeros.
std::vector<double> normalize_advantages(std::span<const double> advantages);

}  // namespace spikenav::ppo

#endif  // SPIKENAV_PPOTRAIN_GAE_HPP_
