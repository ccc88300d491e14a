#ifndef SPIKENAV_PPOTRAIN_PPO_HPP_
#define SPIKENAV_PPOTRAIN_PPO_HPP_

#include <random>
#include <span>
#include <stdexcept>

#include "spikenav/ppotrain/adam.hpp"
#include "spikenav/ppotrain/rollout.hpp"

namespace spikenav::ppo {

struct PpoConfig {
  double learning_rate = 2e-4;
  double clip_range = 0.1;
  int n_epochs = 4;
  std::size_t batch_size = 256;
  double gamma = 0.99;
  double gae_lambda = 0.95;
  double entropy_coef = 0.0;
  double value_coef = 0.5;
  double max_grad_norm = 0.5;

  // Tuned values for each neuron family (learning rate differs).
  static PpoConfig for_kind(policy::NeuronKind kind);
  void validate() const;
};

struct UpdateStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double entropy = 0.0;
  double approx_kl = 0.0;
  double clip_fraction = 0.0;
  double grad_norm = 0.0;
  std::size_t minibatches = 0;
};

class NonFiniteLossError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Diagonal Gaussian log-density, one value per row of z [n x 2].
Tensor gaussian_log_prob(const Tensor& z, const Tensor& mean, const Tensor& log_std);
// -mean(min(ratio * A, clip(ratio, 1 - c, 1 + c) * A)).
Tensor clipped_surrogate(const Tensor& ratio, const Tensor& advantages, double clip_range);

struct LossTerms {
  Tensor total;
  Tensor policy_loss;
  Tensor value_loss;
  double entropy = 0.0;
  double approx_kl = 0.0;
  double clip_fraction = 0.0;
};

// Loss over buffer records `indices`. Records are grouped by observation
// width T, each group runs as one batch, and group terms are weighted by
// their share of the minibatch.
LossTerms ppo_loss(const policy::SpikingActorCritic& policy, const RolloutBuffer& buffer,
                   std::span<const std::size_t> indices, std::span<const double> advantages,
                   const PpoConfig& cfg);

// n_epochs passes over shuffled minibatches, one Adam step per minibatch.
// Expects compute_advantages to have run; normalizes advantages itself.
UpdateStats ppo_update(const RolloutBuffer& buffer, policy::SpikingActorCritic& policy, Adam& optimizer,
                       const PpoConfig& cfg, std::mt19937_64& rng);

}  // namespace spikenav::ppo

#endif  // SPIKENAV_PPOTRAIN_PPO_HPP_
