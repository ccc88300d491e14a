#include "spikenav/ppotrain/gae.hpp"

#include <cmath>
#include <stdexcept>

namespace spikenav::ppo {

GaeResult compute_gae(std::span<const double> rewards, std::span<const double> values,
                      std::span<const std::uint8_t> dones, double bootstrap_value, double gamma,
                      double lambda) {
  const std::size_t n = rewards.size();
  if (values.size() != n || dones.size() != n) {
    throw std::invalid_argument("compute_gae: rewards, values and dones differ in length");
  }
  GaeResult out;
  out.advantages.assign(n, 0.0);
  out.returns.assign(n, 0.0);
  double next_value = bootstrap_value;
  double next_adv = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const double live = dones[i] ? 0.0 : 1.0;
    const double delta = rewards[i] + gamma * next_value * live - values[i];
    next_adv = delta + gamma * lambda * live * next_adv;
    out.advantages[i] = next_adv;
    out.returns[i] = next_adv + values[i];
    next_value = values[i];
  }
  return out;
}

std::vector<double> normalize_advantages(std::span<const double> advantages) {
  std::vector<double> out(advantages.begin(), advantages.end());
  if (out.empty()) return out;
  double mean = 0.0;
  for (double a : out) mean += a;
  mean /= static_cast<double>(out.size());
  double var = 0.0;
  for (double a : out) var += (a - mean) * (a - mean);
  const double std = std::sqrt(var / static_cast<double>(out.size()));
  for (double& a : out) a = std == 0.0 ? 0.0 : (a - mean) / (std + 1e-8);
  return out;
}

}  // namespace spikenav::ppo
