#include "spikenav/snncore/neuron.hpp"

#include <stdexcept>
#include <string>

namespace spikenav::snn {

namespace d = spikenav::diff;

std::string_view to_string(NeuronKind kind) {
  return kind == NeuronKind::kCuba ? "cuba" : "sd";
}

NeuronKind neuron_kind_from_string(std::string_view name) {
  if (name == "sd" || name == "SD" || name == "sigma_delta") return NeuronKind::kSigmaDelta;
  if (name == "cuba" || name == "CUBA") return NeuronKind::kCuba;
  throw std::invalid_argument("unknown neuron kind '" + std::string(name) + "'");
}

void CubaParams::validate() const {
  if (!(v_th > 0.0)) throw d::ContractError("CUBA v_th must be positive");
  if (!(alpha_i > 0.0 && alpha_i < 1.0) || !(alpha_v > 0.0 && alpha_v < 1.0)) {
    throw d::ContractError("CUBA decay factors must lie in (0, 1)");
  }
  surrogate().validate();
}

void SdParams::validate() const {
  if (!(v_th > 0.0)) throw d::ContractError("SD v_th must be positive");
  surrogate().validate();
}

NeuronKind kind_of(const NeuronParams& params) {
  return std::holds_alternative<CubaParams>(params) ? NeuronKind::kCuba
                                                    : NeuronKind::kSigmaDelta;
}

NeuronLayerState NeuronLayerState::zeros(const d::Shape& shape) {
  return {Tensor::zeros(shape), Tensor::zeros(shape), Tensor::zeros(shape)};
}

NeuronStep cuba_step(const NeuronLayerState& state, const Tensor& input_current,
                     const CubaParams& p, SpikeMode mode) {
  const auto surrogate = p.surrogate();
  Tensor current = d::add(d::scale(state.current, p.alpha_i), input_current);
  Tensor v_pre = d::add(d::scale(state.potential, p.alpha_v), current);
  Tensor spikes = mode == SpikeMode::kSurrogate ? d::spike_threshold(v_pre, surrogate)
                                                : d::smooth_spike(v_pre, surrogate);
  // v_pre * (1 - s), written so that a spike leaves exactly 0.
  Tensor v_post = d::sub(v_pre, d::mul(v_pre, spikes));
  return {{std::move(current), std::move(v_post), state.reconstruction},
          std::move(spikes),
          std::move(v_pre)};
}

NeuronStep sd_step(const NeuronLayerState& state, const Tensor& input_activation,
                   const SdParams& p, SpikeMode mode) {
  const auto surrogate = p.surrogate();
  Tensor error = d::sub(input_activation, state.reconstruction);
  Tensor accumulated = d::add(state.potential, error);
  Tensor spikes = mode == SpikeMode::kSurrogate ? d::graded_spike(accumulated, surrogate)
                                                : d::smooth_graded_spike(accumulated, surrogate);
  Tensor reconstruction = d::add(state.reconstruction, spikes);
  Tensor residual = d::sub(accumulated, spikes);
  return {{state.current, std::move(residual), std::move(reconstruction)},
          std::move(spikes),
          std::move(accumulated)};
}

NeuronStep neuron_step(const NeuronLayerState& state, const Tensor& input,
                       const NeuronParams& p, SpikeMode mode) {
  if (const auto* cuba = std::get_if<CubaParams>(&p)) return cuba_step(state, input, *cuba, mode);
  return sd_step(state, input, std::get<SdParams>(p), mode);
}

}  // namespace spikenav::snn
