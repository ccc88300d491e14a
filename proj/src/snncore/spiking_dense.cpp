#include "spikenav/snncore/spiking_dense.hpp"

#include <stdexcept>

namespace spikenav::snn {

namespace d = spikenav::diff;

std::size_t SpikeRaster::width() const { return steps.empty() ? 0 : steps.front().cols(); }

std::size_t SpikeRaster::batch() const { return steps.empty() ? 0 : steps.front().rows(); }

Tensor SpikeRaster::as_matrix(std::size_t sample) const {
  const std::size_t n = width();
  std::vector<double> out;
  out.reserve(steps.size() * n);
  for (const auto& step : steps) {
    const auto row = step.data().subspan(sample * n, n);
    out.insert(out.end(), row.begin(), row.end());
  }
  return Tensor({steps.size(), n}, std::move(out));
}

namespace {

void check_binary(const Tensor& spikes) {
  for (double s : spikes.data()) {
    if (s != 0.0 && s != 1.0) throw std::logic_error("CUBA raster holds a non-binary value");
  }
}

void check_layer_shapes(const Tensor& weights, const Tensor& bias, const Sequence& input_seq) {
  if (weights.dim() != 2) throw d::DimensionError("layer weights must be a matrix");
  if (bias.defined() && bias.shape() != d::Shape{weights.rows()}) {
    throw d::DimensionError("bias width does not match weights");
  }
  for (const auto& x : input_seq) {
    if (x.dim() != 2 || x.cols() != weights.cols()) {
      throw d::DimensionError("input width " + d::shape_string(x.shape()) +
                              " does not match weights " + d::shape_string(weights.shape()));
    }
  }
}

// Synaptic drive for one bin. Under kSigma the weighted input deltas are
// integrated in `integrated` (the SD layer keeps this in its current buffer).
Tensor synaptic_drive(const Tensor& weights, const Tensor& bias, const Tensor& x,
                      InputCoding coding, Tensor& integrated) {
  if (coding == InputCoding::kCurrent) return d::linear(x, weights, bias);
  Tensor weighted = d::linear(x, weights, Tensor());
  integrated = integrated.defined() ? d::add(integrated, weighted) : weighted;
  return bias.defined() ? d::add_row(integrated, bias) : integrated;
}

}  // namespace

DenseForward spiking_dense_forward(const Tensor& weights, const Tensor& bias,
                                   const Sequence& input_seq, const NeuronParams& neuron,
                                   InputCoding coding, SpikeMode mode,
                                   const NeuronLayerState* initial) {
  check_layer_shapes(weights, bias, input_seq);
  DenseForward out;
  if (input_seq.empty()) return out;

  const d::Shape shape{input_seq.front().rows(), weights.rows()};
  NeuronLayerState state = initial ? *initial : NeuronLayerState::zeros(shape);
  if (state.potential.shape() != shape) {
    throw d::DimensionError("initial neuron state has shape " +
                            d::shape_string(state.potential.shape()));
  }
  const bool binary = mode == SpikeMode::kSurrogate && kind_of(neuron) == NeuronKind::kCuba;

  if (coding == InputCoding::kSigma && kind_of(neuron) == NeuronKind::kCuba) {
    throw std::invalid_argument("sigma input coding needs a sigma-delta layer");
  }
  out.raster.steps.reserve(input_seq.size());
  out.pre_reset.reserve(input_seq.size());
  for (const auto& x : input_seq) {
    Tensor integrated = state.current;
    Tensor syn = synaptic_drive(weights, bias, x, coding, integrated);
    NeuronStep step = neuron_step(state, syn, neuron, mode);
    if (binary) check_binary(step.spikes);
    if (coding == InputCoding::kSigma) step.state.current = std::move(integrated);
    out.raster.steps.push_back(std::move(step.spikes));
    out.pre_reset.push_back(std::move(step.pre_reset));
    state = std::move(step.state);
  }
  out.final_state = std::move(state);
  return out;
}

Sequence membrane_readout(const Tensor& weights, const Tensor& bias, const Sequence& input_seq,
                          const NeuronParams& neuron, InputCoding coding) {
  check_layer_shapes(weights, bias, input_seq);
  const auto* cuba = std::get_if<CubaParams>(&neuron);
  Sequence membrane;
  membrane.reserve(input_seq.size());
  Tensor integrated, current, v;
  for (const auto& x : input_seq) {
    Tensor syn = synaptic_drive(weights, bias, x, coding, integrated);
    if (!cuba) {
      membrane.push_back(std::move(syn));
      continue;
    }
    current = current.defined() ? d::add(d::scale(current, cuba->alpha_i), syn) : syn;
    v = v.defined() ? d::add(d::scale(v, cuba->alpha_v), current) : current;
    membrane.push_back(v);
  }
  return membrane;
}

Sequence split_time(const Tensor& time_major) {
  const std::size_t t_len = time_major.rows(), n = time_major.cols();
  Sequence out;
  out.reserve(t_len);
  const auto data = time_major.data();
  for (std::size_t t = 0; t < t_len; ++t) {
    out.emplace_back(d::Shape{1, n}, std::vector<double>(data.begin() + t * n,
                                                         data.begin() + (t + 1) * n));
  }
  return out;
}

}  // namespace spikenav::snn
