#ifndef SPIKENAV_POLICYNET_POLICY_HPP_
#define SPIKENAV_POLICYNET_POLICY_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "spikenav/energymeter/energy.hpp"
#include "spikenav/policynet/action.hpp"
#include "spikenav/policynet/observation_matrix.hpp"
#include "spikenav/snncore/coding.hpp"
#include "spikenav/snncore/neuron.hpp"
#include "spikenav/snncore/spiking_dense.hpp"

namespace spikenav::policy {

using snn::NeuronKind;
using snn::NeuronParams;

// Neuron constants of the feature extractor and the actor layers.
struct NeuronConstants {
  NeuronParams sfe;
  NeuronParams san;

  // Tuned constants for each neuron family.
  static NeuronConstants defaults(NeuronKind kind);
};

struct NetworkShape {
  std::size_t obs_rows = 23;
  std::size_t sfe_width = 64;
  std::size_t san_width = 64;
  std::size_t critic_width = 64;
  static constexpr std::size_t kActionDim = 2;
};

struct InitOptions {
  std::uint64_t seed = 0;
  double log_std = -0.5;
  // Initial log_std of the heading component; NaN means `log_std`.
  double log_std_heading = std::numeric_limits<double>::quiet_NaN();
  // Scale on the default U(-1/sqrt(fan_in), 1/sqrt(fan_in)) draw.
  double readout_gain = 0.0;
  double value_head_gain = 1.0;
};

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

// SFE: spiking obs_rows -> sfe_width. SAN: spiking sfe_width -> san_width
// plus a non-spiking readout to the two action pre-images. Critic: SFE spike
// rate -> tanh -> tanh -> value. log_std is state independent.
struct PolicyParams {
  NeuronKind kind = NeuronKind::kSigmaDelta;
  NeuronConstants neurons;
  NetworkShape shape;

  Tensor sfe_w, sfe_b;
  Tensor san_w, san_b;
  Tensor readout_w, readout_b;
  Tensor critic1_w, critic1_b;
  Tensor critic2_w, critic2_b;
  Tensor value_w, value_b;
  Tensor log_std;

  static PolicyParams initialize(NeuronKind kind, const NetworkShape& shape, const InitOptions& init,
                                 const NeuronConstants& neurons);
  static PolicyParams initialize(NeuronKind kind, const NetworkShape& shape = {},
                                 const InitOptions& init = {});

  std::vector<NamedTensor> named() const;
  std::vector<Tensor> trainable() const;
  void validate() const;
};

struct ActorOutput {
  Tensor pre_mean;  // [B x 2]
  Tensor log_std;   // [2]
  snn::Sequence inputs;
  snn::SpikeRaster sfe;
  snn::SpikeRaster san;
  snn::Sequence readout_membrane;
};

struct JointOutput {
  ActorOutput actor;
  Tensor value;  // [B]
};

class SpikingActorCritic {
 public:
  explicit SpikingActorCritic(PolicyParams params);

  // All matrices in a call must share H and T. Neuron states start at zero
  // on every call.
  ActorOutput actor_forward(std::span<const ObservationMatrix> obs) const;
  Tensor critic_forward(std::span<const ObservationMatrix> obs) const;
  // One SFE pass feeding both heads.
  JointOutput forward(std::span<const ObservationMatrix> obs) const;

  // Deterministic action for one observation.
  env::Action mean_action(const ObservationMatrix& obs, const ActionBounds& bounds) const;
  Vec2d pre_mean(const ActorOutput& out, std::size_t sample = 0) const;
  Vec2d log_std() const;

  const PolicyParams& params() const { return params_; }
  PolicyParams& mutable_params() { return params_; }
  std::vector<Tensor> parameters() const { return params_.trainable(); }

  // Layers as seen by the energy model: input encoding, SFE, SAN, readout.
  energy::ConnectivityMap connectivity() const;
  energy::RasterSet energy_rasters(const ActorOutput& out, std::size_t sample = 0) const;

 private:
  snn::SpikeRaster run_sfe(const snn::Sequence& inputs) const;
  ActorOutput run_actor(snn::Sequence inputs, snn::SpikeRaster sfe) const;
  Tensor run_critic(const snn::SpikeRaster& sfe) const;
  snn::InputCoding spike_coding() const;

  PolicyParams params_;
};

}  // namespace spikenav::policy

#endif  // SPIKENAV_POLICYNET_POLICY_HPP_
