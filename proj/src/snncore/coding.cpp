#include "spikenav/snncore/coding.hpp"

namespace spikenav::snn {

namespace d = spikenav::diff;

Tensor encode_current(const Tensor& obs_matrix) { return d::transpose(obs_matrix); }

Sequence encode_current_batch(std::span<const Tensor> obs_matrices) {
  if (obs_matrices.empty()) return {};
  const std::size_t h = obs_matrices.front().rows();
  const std::size_t t_len = obs_matrices.front().cols();
  const std::size_t batch = obs_matrices.size();
  for (const auto& m : obs_matrices) {
    if (m.rows() != h || m.cols() != t_len) {
      throw d::DimensionError("batched observations must share H and T");
    }
  }
  Sequence out;
  out.reserve(t_len);
  for (std::size_t t = 0; t < t_len; ++t) {
    std::vector<double> bin(batch * h);
    for (std::size_t b = 0; b < batch; ++b) {
      const auto src = obs_matrices[b].data();
      for (std::size_t r = 0; r < h; ++r) bin[b * h + r] = src[r * t_len + t];
    }
    out.emplace_back(d::Shape{batch, h}, std::move(bin));
  }
  return out;
}

namespace {

Tensor time_mean(const Sequence& seq, const char* what) {
  if (seq.empty()) throw d::ContractError(std::string(what) + " needs at least one time bin");
  Tensor acc = seq.front();
  for (std::size_t t = 1; t < seq.size(); ++t) acc = d::add(acc, seq[t]);
  return d::scale(acc, 1.0 / static_cast<double>(seq.size()));
}

}  // namespace

Tensor decode_rate(const SpikeRaster& raster) { return time_mean(raster.steps, "decode_rate"); }

Tensor decode_membrane(const Sequence& potentials) {
  return time_mean(potentials, "decode_membrane");
}

}  // namespace spikenav::snn
