#ifndef SPIKENAV_SNNCORE_CODING_HPP_
#define SPIKENAV_SNNCORE_CODING_HPP_

#include <span>

#include "spikenav/snncore/spiking_dense.hpp"

namespace spikenav::snn {

// Current injection: observation values become synaptic input currents
// unchanged, one column per time bin. [H x T] -> [T x H].
Tensor encode_current(const Tensor& obs_matrix);

// Batched form: B matrices sharing H and T -> T bins of [B x H].
Sequence encode_current_batch(std::span<const Tensor> obs_matrices);

// Per-neuron mean over the time axis. Both throw ContractError when T == 0.
Tensor decode_rate(const SpikeRaster& raster);
Tensor decode_membrane(const Sequence& potentials);

}  // namespace spikenav::snn

#endif  // SPIKENAV_SNNCORE_CODING_HPP_
