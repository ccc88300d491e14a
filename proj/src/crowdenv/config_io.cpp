#include "spikenav/crowdenv/config_io.hpp"

#include <fstream>

namespace spikenav::env {

using nlohmann::json;

namespace {

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void read_range(const json& j, const char* key, Range& out) {
  if (!j.contains(key)) return;
  const auto& r = j.at(key);
  if (!r.is_array() || r.size() != 2) throw ScenarioError(std::string(key) + " must be [lo, hi]");
  out = {r[0].get<double>(), r[1].get<double>()};
}

}  // namespace

ScenarioConfig scenario_from_json(const json& j) {
  ScenarioConfig cfg;
  if (j.contains("kind")) cfg = ScenarioConfig::preset(scenario_kind_from_string(j.at("kind").get<std::string>()));
  read_opt(j, "n_agents", cfg.n_agents);
  read_range(j, "speed_range", cfg.speed_range);
  read_range(j, "prox_range", cfg.prox_range);
  read_opt(j, "agent_radius", cfg.agent_radius);
  read_opt(j, "circle_radius", cfg.circle_radius);
  read_opt(j, "arena_size", cfg.arena_size);
  read_opt(j, "min_separation", cfg.min_separation);
  read_opt(j, "jitter", cfg.jitter);
  read_opt(j, "crossing_goal_jitter", cfg.crossing_goal_jitter);
  read_opt(j, "min_travel", cfg.min_travel);
  read_opt(j, "seed", cfg.seed);
  cfg.validate();
  return cfg;
}

json to_json(const ScenarioConfig& cfg) {
  return {{"kind", std::string(to_string(cfg.kind))},
          {"n_agents", cfg.n_agents},
          {"speed_range", {cfg.speed_range.lo, cfg.speed_range.hi}},
          {"prox_range", {cfg.prox_range.lo, cfg.prox_range.hi}},
          {"agent_radius", cfg.agent_radius},
          {"circle_radius", cfg.circle_radius},
          {"arena_size", cfg.arena_size},
          {"min_separation", cfg.min_separation},
          {"jitter", cfg.jitter},
          {"crossing_goal_jitter", cfg.crossing_goal_jitter},
          {"min_travel", cfg.min_travel},
          {"seed", cfg.seed}};
}

EnvConfig env_config_from_json(const json& j) {
  EnvConfig cfg;
  read_opt(j, "dt", cfg.dt);
  read_opt(j, "max_steps", cfg.max_steps);
  read_opt(j, "history_k", cfg.history_k);
  read_opt(j, "d_heading_max", cfg.d_heading_max);
  read_opt(j, "goal_tolerance", cfg.goal_tolerance);
  read_opt(j, "egocentric", cfg.egocentric);
  if (j.contains("humans")) {
    const auto& h = j.at("humans");
    read_opt(h, "repulsion_gain", cfg.humans.repulsion_gain);
    read_opt(h, "lateral_gain", cfg.humans.lateral_gain);
    read_opt(h, "safety_margin", cfg.humans.safety_margin);
    read_opt(h, "goal_tolerance", cfg.humans.goal_tolerance);
  }
  if (j.contains("reward")) {
    const auto& r = j.at("reward");
    read_opt(r, "r_g", cfg.reward.r_g);
    read_opt(r, "r_c", cfg.reward.r_c);
    read_opt(r, "r_time", cfg.reward.r_time);
    read_opt(r, "r_gd1", cfg.reward.r_gd1);
    read_opt(r, "r_gd2", cfg.reward.r_gd2);
    read_opt(r, "r_v", cfg.reward.r_v);
    read_opt(r, "r_prox", cfg.reward.r_prox_pen);
    read_opt(r, "r_si", cfg.reward.r_si);
    read_opt(r, "lambda", cfg.reward.lambda_default);
  }
  cfg.validate();
  return cfg;
}

json to_json(const EnvConfig& cfg) {
  return {{"dt", cfg.dt},
          {"max_steps", cfg.max_steps},
          {"history_k", cfg.history_k},
          {"d_heading_max", cfg.d_heading_max},
          {"goal_tolerance", cfg.goal_tolerance},
          {"egocentric", cfg.egocentric},
          {"humans",
           {{"repulsion_gain", cfg.humans.repulsion_gain},
            {"lateral_gain", cfg.humans.lateral_gain},
            {"safety_margin", cfg.humans.safety_margin},
            {"goal_tolerance", cfg.humans.goal_tolerance}}},
          {"reward",
           {{"r_g", cfg.reward.r_g},
            {"r_c", cfg.reward.r_c},
            {"r_time", cfg.reward.r_time},
            {"r_gd1", cfg.reward.r_gd1},
            {"r_gd2", cfg.reward.r_gd2},
            {"r_v", cfg.reward.r_v},
            {"r_prox", cfg.reward.r_prox_pen},
            {"r_si", cfg.reward.r_si},
            {"lambda", cfg.reward.lambda_default}}}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

ScenarioConfig resolve_scenario(const std::string& name_or_path) {
  if (name_or_path == "circle_interaction" || name_or_path == "circle_crossing" ||
      name_or_path == "random") {
    return ScenarioConfig::preset(scenario_kind_from_string(name_or_path));
  }
  return scenario_from_json(read_json_file(name_or_path));
}

}  // namespace spikenav::env
