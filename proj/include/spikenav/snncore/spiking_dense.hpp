#ifndef SPIKENAV_SNNCORE_SPIKING_DENSE_HPP_
#define SPIKENAV_SNNCORE_SPIKING_DENSE_HPP_

#include <vector>

#include "spikenav/snncore/neuron.hpp"

namespace spikenav::snn {

// Time-major sequence: one [batch x width] tensor per time bin.
using Sequence = std::vector<Tensor>;

// Per-layer spike record. Binary for CUBA layers, graded for SD layers.
struct SpikeRaster {
  Sequence steps;

  std::size_t time_steps() const { return steps.size(); }
  std::size_t width() const;
  std::size_t batch() const;
  // Single-sample view as a [T x width] matrix (detached).
  Tensor as_matrix(std::size_t sample = 0) const;
};

// How a layer interprets its input sequence. kCurrent feeds each bin straight
// into the synapse. kSigma first integrates the incoming graded deltas, the
// decoder half of a sigma-delta link.
enum class InputCoding { kCurrent, kSigma };

struct DenseForward {
  SpikeRaster raster;
  Sequence pre_reset;
  NeuronLayerState final_state;
};

// Runs a dense spiking layer over the sequence, carrying neuron state across
// bins. The initial state defaults to zeros.
DenseForward spiking_dense_forward(const Tensor& weights, const Tensor& bias,
                                   const Sequence& input_seq, const NeuronParams& neuron,
                                   InputCoding coding = InputCoding::kCurrent,
                                   SpikeMode mode = SpikeMode::kSurrogate,
                                   const NeuronLayerState* initial = nullptr);

// Non-spiking readout. Membrane per bin: leaky CUBA integration without
// threshold, or for SD the synaptic drive itself.
Sequence membrane_readout(const Tensor& weights, const Tensor& bias, const Sequence& input_seq,
                          const NeuronParams& neuron, InputCoding coding = InputCoding::kCurrent);

Sequence split_time(const Tensor& time_major);  // [T x n] -> T x [1 x n]

}  // namespace spikenav::snn

#endif  // SPIKENAV_SNNCORE_SPIKING_DENSE_HPP_
