#include "spikenav/ppotrain/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "spikenav/diffcore/ops.hpp"
#include "spikenav/ppotrain/gae.hpp"

namespace spikenav::ppo {

namespace d = spikenav::diff;

PpoConfig PpoConfig::for_kind(policy::NeuronKind kind) {
  PpoConfig cfg;
  cfg.learning_rate = kind == policy::NeuronKind::kCuba ? 9e-5 : 2e-4;
  return cfg;
}

void PpoConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
  if (!(clip_range > 0.0)) throw std::invalid_argument("clip_range must be positive");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
  if (n_epochs < 1 || batch_size < 1) throw std::invalid_argument("n_epochs and batch_size must be >= 1");
  if (gae_lambda < 0.0 || gae_lambda > 1.0) throw std::invalid_argument("gae_lambda must lie in [0, 1]");
  if (!(max_grad_norm > 0.0)) throw std::invalid_argument("max_grad_norm must be positive");
}

Tensor gaussian_log_prob(const Tensor& z, const Tensor& mean, const Tensor& log_std) {
  const Tensor inv_std = d::exp(d::neg(log_std));
  const Tensor normed = d::mul_row(d::sub(z, mean), inv_std);
  const Tensor per_dim = d::add_row(d::scale(d::square(normed), -0.5), d::neg(log_std));
  const double log_norm = 0.5 * std::log(2.0 * std::numbers::pi) * static_cast<double>(z.cols());
  return d::add_scalar(d::row_sum(per_dim), -log_norm);
}

Tensor clipped_surrogate(const Tensor& ratio, const Tensor& advantages, double clip_range) {
  const Tensor unclipped = d::mul(ratio, advantages);
  const Tensor clipped = d::mul(d::clamp(ratio, 1.0 - clip_range, 1.0 + clip_range), advantages);
  return d::neg(d::mean(d::minimum(unclipped, clipped)));
}

LossTerms ppo_loss(const policy::SpikingActorCritic& policy, const RolloutBuffer& buffer,
                   std::span<const std::size_t> indices, std::span<const double> advantages,
                   const PpoConfig& cfg) {
  if (indices.empty()) throw std::invalid_argument("ppo_loss: empty minibatch");
  if (advantages.size() != buffer.steps.size() || buffer.returns.size() != buffer.steps.size()) {
    throw std::invalid_argument("ppo_loss: advantages/returns not computed for this buffer");
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i : indices) groups[buffer.steps.at(i).obs.time_bins()].push_back(i);

  LossTerms terms;
  const double n_total = static_cast<double>(indices.size());
  const double c = cfg.clip_range;
  for (const auto& [t_bins, members] : groups) {
    const std::size_t n = members.size();
    std::vector<policy::ObservationMatrix> obs;
    std::vector<double> z, old_lp, adv, ret;
    for (std::size_t i : members) {
      const auto& tr = buffer.steps[i];
      obs.push_back(tr.obs);
      z.insert(z.end(), tr.pre_image.begin(), tr.pre_image.end());
      old_lp.push_back(tr.log_prob);
      adv.push_back(advantages[i]);
      ret.push_back(buffer.returns[i]);
    }
    const auto out = policy.forward(obs);
    const Tensor logp = gaussian_log_prob(Tensor({n, 2}, std::move(z)), out.actor.pre_mean, out.actor.log_std);
    const Tensor ratio = d::exp(d::sub(logp, Tensor({n}, old_lp)));
    const double w = static_cast<double>(n) / n_total;
    const Tensor pl = d::scale(clipped_surrogate(ratio, Tensor({n}, adv), c), w);
    const Tensor vl = d::scale(d::mean(d::square(d::sub(out.value, Tensor({n}, ret)))), w);
    terms.policy_loss = terms.policy_loss.defined() ? d::add(terms.policy_loss, pl) : pl;
    terms.value_loss = terms.value_loss.defined() ? d::add(terms.value_loss, vl) : vl;

    for (std::size_t k = 0; k < n; ++k) {
      const double r = ratio.at(k);
      terms.approx_kl += (old_lp[k] - logp.at(k)) / n_total;
      terms.clip_fraction += (std::abs(r - 1.0) > c ? 1.0 : 0.0) / n_total;
    }
  }
  const Tensor& log_std = policy.params().log_std;
  const Tensor entropy = d::add_scalar(d::sum(log_std), static_cast<double>(log_std.numel()) * 0.5 *
                                                           (1.0 + std::log(2.0 * std::numbers::pi)));
  terms.entropy = entropy.item();
  terms.total = d::add(terms.policy_loss, d::scale(terms.value_loss, cfg.value_coef));
  if (cfg.entropy_coef != 0.0) terms.total = d::sub(terms.total, d::scale(entropy, cfg.entropy_coef));
  return terms;
}

UpdateStats ppo_update(const RolloutBuffer& buffer, policy::SpikingActorCritic& policy, Adam& optimizer,
                       const PpoConfig& cfg, std::mt19937_64& rng) {
  cfg.validate();
  const std::size_t n = buffer.steps.size();
  if (n == 0) throw std::invalid_argument("ppo_update: empty buffer");
  const std::vector<double> adv = normalize_advantages(buffer.advantages);
  const std::size_t mb = std::min(cfg.batch_size, n);
  const auto params = policy.parameters();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  UpdateStats stats;
  for (int epoch = 0; epoch < cfg.n_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < n; start += mb) {
      const std::size_t len = std::min(mb, n - start);
      const auto idx = std::span<const std::size_t>(order).subspan(start, len);
      optimizer.zero_grad();
      LossTerms terms = ppo_loss(policy, buffer, idx, adv, cfg);
      const double total = terms.total.item();
      if (!std::isfinite(total)) {
        std::ostringstream msg;
        msg << "non-finite PPO loss at epoch " << epoch << ", minibatch starting " << start
            << ": policy=" << terms.policy_loss.item() << " value=" << terms.value_loss.item()
            << " approx_kl=" << terms.approx_kl;
        throw NonFiniteLossError(msg.str());
      }
      d::backward(terms.total);
      stats.grad_norm = clip_grad_norm(params, cfg.max_grad_norm);
      optimizer.step();

      ++stats.minibatches;
      stats.policy_loss += terms.policy_loss.item();
      stats.value_loss += terms.value_loss.item();
      stats.entropy = terms.entropy;
      stats.approx_kl += terms.approx_kl;
      stats.clip_fraction += terms.clip_fraction;
    }
  }
  const double k = static_cast<double>(stats.minibatches);
  stats.policy_loss /= k;
  stats.value_loss /= k;
  stats.approx_kl /= k;
  stats.clip_fraction /= k;
  return stats;
}

}  // namespace spikenav::ppo
