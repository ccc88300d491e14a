#include "spikenav/ppotrain/run_config.hpp"

#include <cmath>

#include "spikenav/crowdenv/config_io.hpp"

namespace spikenav::ppo {

using nlohmann::json;

RunConfig RunConfig::defaults(policy::NeuronKind kind) {
  RunConfig cfg;
  cfg.kind = kind;
  cfg.ppo = PpoConfig::for_kind(kind);
  cfg.n_steps = kind == policy::NeuronKind::kCuba ? 128 : 256;
  cfg.network.obs_rows = cfg.env.observation_rows();
  return cfg;
}

void RunConfig::validate() const {
  scenario.validate();
  env.validate();
  ppo.validate();
  if (n_steps == 0) throw std::invalid_argument("n_steps must be positive");
  if (total_steps < n_steps) throw std::invalid_argument("total_steps must cover at least one rollout");
  if (network.obs_rows != env.observation_rows()) {
    throw std::invalid_argument("network obs_rows disagrees with the environment history length");
  }
}

namespace {

template <typename T>
void read(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
  const auto kind = snn::neuron_kind_from_string(j.value("neuron", std::string("sd")));
  RunConfig cfg = RunConfig::defaults(kind);
  read(j, "name", cfg.name);
  if (j.contains("scenario")) {
    const auto& s = j.at("scenario");
    cfg.scenario = s.is_string() ? env::resolve_scenario(s.get<std::string>()) : env::scenario_from_json(s);
  }
  if (j.contains("env")) cfg.env = env::env_config_from_json(j.at("env"));
  if (j.contains("ppo")) {
    const auto& p = j.at("ppo");
    read(p, "learning_rate", cfg.ppo.learning_rate);
    read(p, "clip_range", cfg.ppo.clip_range);
    read(p, "n_epochs", cfg.ppo.n_epochs);
    read(p, "batch_size", cfg.ppo.batch_size);
    read(p, "gamma", cfg.ppo.gamma);
    read(p, "gae_lambda", cfg.ppo.gae_lambda);
    read(p, "entropy_coef", cfg.ppo.entropy_coef);
    read(p, "value_coef", cfg.ppo.value_coef);
    read(p, "max_grad_norm", cfg.ppo.max_grad_norm);
  }
  if (j.contains("network")) {
    const auto& n = j.at("network");
    read(n, "sfe_width", cfg.network.sfe_width);
    read(n, "san_width", cfg.network.san_width);
    read(n, "critic_width", cfg.network.critic_width);
  }
  if (j.contains("init")) {
    const auto& i = j.at("init");
    read(i, "log_std", cfg.init.log_std);
    if (i.contains("log_std_heading") && !i.at("log_std_heading").is_null()) {
      cfg.init.log_std_heading = i.at("log_std_heading").get<double>();
    }
    read(i, "readout_gain", cfg.init.readout_gain);
    read(i, "value_head_gain", cfg.init.value_head_gain);
  }
  read(j, "total_steps", cfg.total_steps);
  read(j, "n_steps", cfg.n_steps);
  read(j, "seed", cfg.seed);
  if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
  read(j, "checkpoint_every", cfg.checkpoint_every);
  cfg.init.seed = cfg.seed;
  cfg.network.obs_rows = cfg.env.observation_rows();
  cfg.validate();
  return cfg;
}

json to_json(const RunConfig& cfg) {
  return json{
      {"name", cfg.name},
      {"neuron", std::string(snn::to_string(cfg.kind))},
      {"scenario", env::to_json(cfg.scenario)},
      {"env", env::to_json(cfg.env)},
      {"ppo",
       {{"learning_rate", cfg.ppo.learning_rate},
        {"clip_range", cfg.ppo.clip_range},
        {"n_epochs", cfg.ppo.n_epochs},
        {"batch_size", cfg.ppo.batch_size},
        {"gamma", cfg.ppo.gamma},
        {"gae_lambda", cfg.ppo.gae_lambda},
        {"entropy_coef", cfg.ppo.entropy_coef},
        {"value_coef", cfg.ppo.value_coef},
        {"max_grad_norm", cfg.ppo.max_grad_norm}}},
      {"network",
       {{"sfe_width", cfg.network.sfe_width},
        {"san_width", cfg.network.san_width},
        {"critic_width", cfg.network.critic_width}}},
      {"init",
       {{"log_std", cfg.init.log_std},
        {"log_std_heading", std::isnan(cfg.init.log_std_heading) ? json(nullptr)
                                                                 : json(cfg.init.log_std_heading)},
        {"readout_gain", cfg.init.readout_gain},
        {"value_head_gain", cfg.init.value_head_gain}}},
      {"total_steps", cfg.total_steps},
      {"n_steps", cfg.n_steps},
      {"seed", cfg.seed},
      {"output_dir", cfg.output_dir.string()},
      {"checkpoint_every", cfg.checkpoint_every},
  };
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return run_config_from_json(env::read_json_file(path));
}

}  // namespace spikenav::ppo
