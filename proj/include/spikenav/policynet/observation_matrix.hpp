#ifndef SPIKENAV_POLICYNET_OBSERVATION_MATRIX_HPP_
#define SPIKENAV_POLICYNET_OBSERVATION_MATRIX_HPP_

#include <span>

#include "spikenav/crowdenv/observation.hpp"
#include "spikenav/diffcore/tensor.hpp"

namespace spikenav::policy {

using diff::Tensor;

// [H x T]: column j stacks the robot observation over the j-th closest human.
// With no humans there is one column whose human block is zero.
struct ObservationMatrix {
  Tensor data;

  std::size_t rows() const { return data.rows(); }
  std::size_t time_bins() const { return data.cols(); }
};

// `humans` must already be sorted closest-first; the history length is taken
// from the blocks (or `history_k` when there are no humans).
ObservationMatrix build_observation_matrix(const env::RobotObservation& robot,
                                           std::span<const env::HumanObservation> humans,
                                           std::size_t history_k);

ObservationMatrix build_observation_matrix(const env::Observation& obs, std::size_t history_k);

}  // namespace spikenav::policy

#endif  // SPIKENAV_POLICYNET_OBSERVATION_MATRIX_HPP_
