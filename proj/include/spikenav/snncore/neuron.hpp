#ifndef SPIKENAV_SNNCORE_NEURON_HPP_
#define SPIKENAV_SNNCORE_NEURON_HPP_

#include <string_view>
#include <variant>

#include "spikenav/diffcore/ops.hpp"
#include "spikenav/diffcore/tensor.hpp"

namespace spikenav::snn {

using diff::SurrogateParams;
using diff::Tensor;

enum class NeuronKind { kSigmaDelta, kCuba };

std::string_view to_string(NeuronKind kind);
NeuronKind neuron_kind_from_string(std::string_view name);

// Discrete current-based LIF: resting potential 0, hard reset to 0, per-step
// decay factors for synaptic current and membrane.
struct CubaParams {
  double v_th = 1.0;
  double alpha_i = 0.5;
  double alpha_v = 0.5;
  double tau_grad = 1.0;
  double s_grad = 1.0;

  SurrogateParams surrogate() const { return {v_th, tau_grad, s_grad}; }
  void validate() const;
};

// Sigma-delta encoder: integrates input minus reconstruction, emits the whole
// accumulated error as a graded spike once |error| reaches v_th.
struct SdParams {
  double v_th = 1.0;
  double tau_grad = 1.0;
  double s_grad = 1.0;

  SurrogateParams surrogate() const { return {v_th, tau_grad, s_grad}; }
  void validate() const;
};

using NeuronParams = std::variant<SdParams, CubaParams>;

NeuronKind kind_of(const NeuronParams& params);

// Per-neuron dynamic variables. Buffers share one shape, either [n] or
// [batch x n]. `current` is used by CUBA only, `reconstruction` by SD only.
struct NeuronLayerState {
  Tensor current;
  Tensor potential;
  Tensor reconstruction;

  static NeuronLayerState zeros(const diff::Shape& shape);
};

// kSurrogate is the real spiking forward. kSmoothProxy swaps the threshold
// for its smooth antiderivative so the whole network is differentiable.
enum class SpikeMode { kSurrogate, kSmoothProxy };

struct NeuronStep {
  NeuronLayerState state;
  Tensor spikes;
  // Membrane (CUBA) or accumulated error (SD) before reset.
  Tensor pre_reset;
};

NeuronStep cuba_step(const NeuronLayerState& state, const Tensor& input_current,
                     const CubaParams& p, SpikeMode mode = SpikeMode::kSurrogate);

NeuronStep sd_step(const NeuronLayerState& state, const Tensor& input_activation,
                   const SdParams& p, SpikeMode mode = SpikeMode::kSurrogate);

NeuronStep neuron_step(const NeuronLayerState& state, const Tensor& input,
                       const NeuronParams& p, SpikeMode mode = SpikeMode::kSurrogate);

}  // namespace spikenav::snn

#endif  // SPIKENAV_SNNCORE_NEURON_HPP_
