#ifndef SPIKENAV_PPOTRAIN_ADAM_HPP_
#define SPIKENAV_PPOTRAIN_ADAM_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "spikenav/diffcore/tensor.hpp"

namespace spikenav::ppo {

using diff::Tensor;

struct AdamConfig {
  double lr = 2e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Bias-corrected Adam over a fixed list of leaf tensors. Parameters without
// a gradient are skipped for that step (their moments are left alone).
class Adam {
 public:
  Adam(std::vector<Tensor> params, AdamConfig config);

  void step();
  void zero_grad();
  std::int64_t steps() const { return t_; }
  const AdamConfig& config() const { return config_; }
  void set_lr(double lr) { config_.lr = lr; }

 private:
  std::vector<Tensor> params_;
  std::vector<std::vector<double>> m_;
  std::vector<std::vector<double>> v_;
  AdamConfig config_;
  std::int64_t t_ = 0;
};

// Rescales all gradients so their joint L2 norm is at most max_norm.
// Returns the norm before clipping.
double clip_grad_norm(std::span<const Tensor> params, double max_norm);

}  // namespace spikenav::ppo

#endif  // SPIKENAV_PPOTRAIN_ADAM_HPP_
