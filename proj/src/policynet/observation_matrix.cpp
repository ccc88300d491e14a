#include "spikenav/policynet/observation_matrix.hpp"

#include <algorithm>

namespace spikenav::policy {

ObservationMatrix build_observation_matrix(const env::RobotObservation& robot,
                                           std::span<const env::HumanObservation> humans,
                                           std::size_t history_k) {
  const std::size_t robot_rows = env::RobotObservation::kSize;
  const std::size_t human_rows = env::HumanObservation::size_for(history_k);
  const std::size_t h = robot_rows + human_rows;
  const std::size_t t_len = std::max<std::size_t>(1, humans.size());

  std::vector<double> data(h * t_len, 0.0);
  const auto robot_vec = robot.to_array();
  for (std::size_t j = 0; j < t_len; ++j) {
    for (std::size_t r = 0; r < robot_rows; ++r) data[r * t_len + j] = robot_vec[r];
  }
  for (std::size_t j = 0; j < humans.size(); ++j) {
    const auto column = humans[j].flatten();
    if (column.size() != human_rows) {
      throw diff::DimensionError("human observation has " + std::to_string(column.size()) +
                                 " values, expected " + std::to_string(human_rows));
    }
    for (std::size_t r = 0; r < human_rows; ++r) data[(robot_rows + r) * t_len + j] = column[r];
  }
  return {Tensor({h, t_len}, std::move(data))};
}

ObservationMatrix build_observation_matrix(const env::Observation& obs, std::size_t history_k) {
  return build_observation_matrix(obs.robot, obs.humans, history_k);
}

}  // namespace spikenav::policy
