#include "spikenav/policynet/action.hpp"

#include <cmath>
#include <numbers>

namespace spikenav::policy {

namespace {

double half_span(const ActionBounds& b, int k) {
  return k == 0 ? 0.5 * b.speed_max : b.d_heading_max;
}

// log(1 - tanh(z)^2) without cancellation for large |z|.
double log_sech2(double z) {
  const double a = std::abs(z);
  return 2.0 * (std::numbers::ln2 - a - std::log1p(std::exp(-2.0 * a)));
}

}  // namespace

env::Action squash_action(const Vec2d& z, const ActionBounds& b) {
  return {0.5 * b.speed_max * (std::tanh(z[0]) + 1.0), b.d_heading_max * std::tanh(z[1])};
}

double gaussian_log_prob(const Vec2d& z, const Vec2d& mean, const Vec2d& log_std) {
  constexpr double kHalfLog2Pi = 0.91893853320467274178;
  double lp = 0.0;
  for (int k = 0; k < 2; ++k) {
    const double s = (z[k] - mean[k]) * std::exp(-log_std[k]);
    lp += -0.5 * s * s - log_std[k] - kHalfLog2Pi;
  }
  return lp;
}

double squash_log_det(const Vec2d& z, const ActionBounds& b) {
  double ld = 0.0;
  for (int k = 0; k < 2; ++k) ld += std::log(half_span(b, k)) + log_sech2(z[k]);
  return ld;
}

SampledAction sample_action(const Vec2d& mean, const Vec2d& log_std, const ActionBounds& bounds,
                            std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SampledAction out;
  for (int k = 0; k < 2; ++k) out.pre_image[k] = mean[k] + std::exp(log_std[k]) * normal(rng);
  out.action = squash_action(out.pre_image, bounds);
  out.pre_image_log_prob = gaussian_log_prob(out.pre_image, mean, log_std);
  out.log_prob = out.pre_image_log_prob - squash_log_det(out.pre_image, bounds);
  return out;
}

}  // namespace spikenav::policy
