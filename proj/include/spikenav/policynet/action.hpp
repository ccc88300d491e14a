#ifndef SPIKENAV_POLICYNET_ACTION_HPP_
#define SPIKENAV_POLICYNET_ACTION_HPP_

#include <array>
#include <random>

#include "spikenav/crowdenv/types.hpp"

namespace spikenav::policy {

using Vec2d = std::array<double, 2>;

// Speed in [0, speed_max], heading change in [-d_heading_max, d_heading_max].
struct ActionBounds {
  double speed_max = 1.0;
  double d_heading_max = 0.5;
};

// Affine map of tanh(z) onto the bounds, per component.
env::Action squash_action(const Vec2d& pre_image, const ActionBounds& bounds);

// Diagonal Gaussian density of z in the pre-image.
double gaussian_log_prob(const Vec2d& z, const Vec2d& mean, const Vec2d& log_std);
// log |d action / d z| of the squashing map at z.
double squash_log_det(const Vec2d& z, const ActionBounds& bounds);

struct SampledAction {
  env::Action action;
  Vec2d pre_image{};
  // Density of the action itself (squashing correction included).
  double log_prob = 0.0;
  // Density of the pre-image sample; this is what PPO ratios use, the
  // correction term cancels between old and new policies.
  double pre_image_log_prob = 0.0;
};

SampledAction sample_action(const Vec2d& mean, const Vec2d& log_std, const ActionBounds& bounds,
                            std::mt19937_64& rng);

}  // namespace spikenav::policy

#endif  // SPIKENAV_POLICYNET_ACTION_HPP_
