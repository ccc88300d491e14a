#ifndef SPIKENAV_CROWDENV_CONFIG_IO_HPP_
#define SPIKENAV_CROWDENV_CONFIG_IO_HPP_

#include <filesystem>

#include <json.hpp>

#include "spikenav/crowdenv/env.hpp"

namespace spikenav::env {

// Keys mirror the struct fields; anything omitted keeps its default.
// Scenario files may give only {"kind": "..."} to get the stock preset.
ScenarioConfig scenario_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScenarioConfig& cfg);

EnvConfig env_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EnvConfig& cfg);

nlohmann::json read_json_file(const std::filesystem::path& path);

// Accepts a stock scenario name or a path to a scenario JSON file.
ScenarioConfig resolve_scenario(const std::string& name_or_path);

}  // namespace spikenav::env

#endif  // SPIKENAV_CROWDENV_CONFIG_IO_HPP_
