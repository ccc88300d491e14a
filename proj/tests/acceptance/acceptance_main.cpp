#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spikenav/diffcore/gradcheck.hpp"
#include "spikenav/harness/evaluation.hpp"
#include "spikenav/harness/exports.hpp"
#include "spikenav/ppotrain/gae.hpp"
#include "spikenav/ppotrain/trainer.hpp"

using namespace spikenav;
using diff::Tensor;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  bool blocking = true;
  std::function<Outcome()> run;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

// ---------------------------------------------------------------- neurons

struct ScalarCuba {
  double current, v;
};

double scalar_cuba(ScalarCuba& s, double x, const snn::CubaParams& p, double& pre) {
  s.current = p.alpha_i * s.current + x;
  s.v = p.alpha_v * s.v + s.current;
  pre = s.v;
  const double spike = s.v >= p.v_th ? 1.0 : 0.0;
  s.v = s.v - s.v * spike;
  return spike;
}

struct ScalarSd {
  double pot, recon;
};

double scalar_sd(ScalarSd& s, double x, const snn::SdParams& p, double& pre) {
  const double u = s.pot + (x - s.recon);
  pre = u;
  const double spike = std::abs(u) >= p.v_th ? u : 0.0;
  s.recon = s.recon + spike;
  s.pot = u - spike;
  return spike;
}

Outcome neuron_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr std::size_t n = 1000;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::size_t mismatches = 0;
  auto state_tensor = [&](std::vector<double>& v) {
    v.resize(n);
    for (double& x : v) x = u(rng);
    return Tensor({1, n}, v);
  };
  for (const auto& params : {policy::NeuronConstants::defaults(policy::NeuronKind::kCuba),
                             policy::NeuronConstants::defaults(policy::NeuronKind::kSigmaDelta)}) {
    for (const auto& neuron : {params.sfe, params.san}) {
      std::vector<double> a, b, c, x;
      snn::NeuronLayerState st{state_tensor(a), state_tensor(b), state_tensor(c)};
      const Tensor input = state_tensor(x);
      const snn::NeuronStep out = snn::neuron_step(st, input, neuron);
      for (std::size_t i = 0; i < n; ++i) {
        double pre = 0.0, spike = 0.0, s1 = 0.0, s2 = 0.0;
        if (const auto* p = std::get_if<snn::CubaParams>(&neuron)) {
          ScalarCuba s{a[i], b[i]};
          spike = scalar_cuba(s, x[i], *p, pre);
          s1 = s.current;
          s2 = s.v;
          mismatches += out.state.current.at(i) != s1 || out.state.potential.at(i) != s2;
        } else {
          ScalarSd s{b[i], c[i]};
          spike = scalar_sd(s, x[i], std::get<snn::SdParams>(neuron), pre);
          mismatches += out.state.potential.at(i) != s.pot || out.state.reconstruction.at(i) != s.recon;
        }
        mismatches += out.spikes.at(i) != spike || out.pre_reset.at(i) != pre;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 5.0, fmt("4 x 1000 pairs, %zu mismatches, %.2fs", mismatches, secs)};
}

Outcome sd_reconstruction() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = std::get<snn::SdParams>(policy::NeuronConstants::defaults(policy::NeuronKind::kSigmaDelta).sfe);
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  double worst_err = 0.0, worst_mass = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Tensor x({1, 1}, {u(rng)});
    snn::NeuronLayerState st = snn::NeuronLayerState::zeros({1, 1});
    double mass = 0.0;
    for (int t = 0; t < 16; ++t) {
      const snn::NeuronStep out = snn::sd_step(st, x, p);
      mass += out.spikes.at(0);
      st = out.state;
    }
    worst_err = std::max(worst_err, std::abs(st.reconstruction.at(0) - x.at(0)));
    worst_mass = std::max(worst_mass, std::abs(mass - st.reconstruction.at(0)));
  }
  const double secs = seconds_since(t0);
  return {worst_err < p.v_th && worst_mass <= 1e-12 && secs < 5.0,
          fmt("max |recon - x| %.3g (v_th %.3g), max |mass - recon| %.3g, %.2fs", worst_err, p.v_th, worst_mass,
              secs)};
}

// ---------------------------------------------------------------- gradients

Tensor random_tensor(diff::Shape shape, double bound, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-bound, bound);
  std::vector<double> v(diff::shape_numel(shape));
  for (double& x : v) x = u(rng);
  return Tensor(std::move(shape), std::move(v));
}

Outcome gradient_check(const ppo::RunConfig& base) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int net = 0; net < 20; ++net) {
    const bool sd = net % 2 == 0;
    auto neuron = [&]() -> snn::NeuronParams {
      const double tau = 0.5 + u(rng);
      if (sd) return snn::SdParams{0.1 + 0.3 * u(rng), tau, 0.5 + u(rng)};
      return snn::CubaParams{0.5 + u(rng), 0.2 + 0.6 * u(rng), 0.2 + 0.6 * u(rng), tau, 0.5 + u(rng)};
    };
    const std::vector<std::size_t> widths{5, 6, 4, 2};
    std::vector<Tensor> w, b;
    std::vector<snn::NeuronParams> ns;
    for (std::size_t l = 0; l < 3; ++l) {
      w.push_back(random_tensor({widths[l + 1], widths[l]}, 1.0 / std::sqrt(double(widths[l])), rng));
      b.push_back(random_tensor({widths[l + 1]}, 0.3, rng));
      ns.push_back(neuron());
    }
    snn::Sequence input;
    for (int t = 0; t < 4; ++t) input.push_back(random_tensor({2, widths[0]}, 1.0, rng));
    const std::size_t probe = static_cast<std::size_t>(net) % 3;
    auto loss = [&](const Tensor& wp) {
      snn::Sequence seq = input;
      for (std::size_t l = 0; l < 3; ++l) {
        const auto coding = sd && l > 0 ? snn::InputCoding::kSigma : snn::InputCoding::kCurrent;
        seq = snn::spiking_dense_forward(l == probe ? wp : w[l], b[l], seq, ns[l], coding,
                                         snn::SpikeMode::kSmoothProxy)
                  .raster.steps;
      }
      return diff::sum(diff::tanh(snn::decode_rate(snn::SpikeRaster{seq})));
    };
    worst = std::max(worst, diff::finite_diff_check(loss, w[probe], 1e-6));
  }

  // One joint PPO loss on the real spiking network.
  ppo::RunConfig cfg = base;
  policy::InitOptions init = cfg.init;
  init.readout_gain = 1.0;
  policy::SpikingActorCritic net(policy::PolicyParams::initialize(cfg.kind, cfg.network, init));
  ppo::EnvRunner runner(cfg.scenario, cfg.env, 7);
  std::mt19937_64 sample(8);
  ppo::RolloutBuffer buf = ppo::collect_rollout(runner, net, 64, sample);
  ppo::compute_advantages(buf, cfg.ppo.gamma, cfg.ppo.gae_lambda);
  const auto adv = ppo::normalize_advantages(buf.advantages);
  std::vector<std::size_t> idx(buf.steps.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (const auto& t : net.parameters()) t.node()->grad.clear();
  const ppo::LossTerms terms = ppo::ppo_loss(net, buf, idx, adv, cfg.ppo);
  diff::backward(terms.total);
  auto nonzero = [](const Tensor& t) {
    if (!t.has_grad()) return false;
    for (double g : t.grad())
      if (g != 0.0) return true;
    return false;
  };
  const auto& p = net.params();
  const bool grads = nonzero(p.sfe_w) && nonzero(p.san_w) && nonzero(p.critic1_w) && nonzero(p.readout_w) &&
                     nonzero(p.value_w);
  const double secs = seconds_since(t0);
  return {worst <= 1e-5 && grads && secs < 30.0,
          fmt("20 proxy nets max rel err %.3g; joint grads sfe/san/critic nonzero=%s; %.2fs", worst,
              grads ? "yes" : "no", secs)};
}

// ---------------------------------------------------------------- energy

Outcome energy_oracle() {
  std::mt19937_64 rng(404);
  std::size_t bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t layers = 2 + rng() % 3, steps = 1 + rng() % 12;
    std::vector<std::size_t> width(layers);
    for (auto& w : width) w = 1 + rng() % 20;
    energy::ConnectivityMap conn;
    energy::RasterSet rasters;
    for (std::size_t l = 0; l < layers; ++l) {
      const std::size_t target = l + 1 < layers ? width[l + 1] : 0;
      std::vector<std::uint64_t> fan(width[l]);
      for (auto& f : fan) f = rng() % (target + 1);
      conn.fan_out.push_back(fan);
      conn.target_width.push_back(target);
      energy::LayerRaster r;
      r.width = width[l];
      for (std::size_t i = 0; i < steps * width[l]; ++i) {
        const auto k = rng() % 4;
        r.values.push_back(k == 0 ? 1.0 : (k == 1 ? -0.37 : 0.0));
      }
      rasters.push_back(r);
    }
    std::uint64_t brute = 0;
    for (std::size_t l = 0; l < layers; ++l)
      for (std::size_t t = 0; t < steps; ++t)
        for (std::size_t i = 0; i < width[l]; ++i)
          if (rasters[l].values[t * width[l] + i] != 0.0) brute += conn.fan_out[l][i];
    bad += energy::count_synops_event_driven(rasters, conn) != brute;
  }
  const double loihi = energy::device_joules(energy::device_by_name("Loihi"), 1000, 500);
  const bool loihi_ok = std::abs(loihi - 6.76e-8) <= 1e-15 * 6.76e-8 * 10;
  return {bad == 0 && loihi_ok, fmt("50 rasters, %zu mismatches; Loihi 1000 synops + 500 updates = %.6g J", bad, loihi)};
}

Outcome energy_ratio(const std::optional<policy::PolicyParams>& trained, const ppo::RunConfig& cfg) {
  if (!trained) return {false, "no trained SD policy available"};
  const auto t0 = std::chrono::steady_clock::now();
  policy::SpikingActorCritic net(*trained);
  harness::EvalOptions o;
  o.n_episodes = 20;
  o.seed = 2024;
  const harness::EvalResult ev = harness::run_episodes(net, cfg.scenario, cfg.env, o);
  double loihi = 0.0, x86 = 0.0;
  for (const auto& m : ev.metrics) {
    loihi += m.episode_energy.joules("Loihi");
    x86 += m.episode_energy.joules("CPU x86");
  }
  const double ratio = loihi / x86, bound = std::pow(10.0, -1.5);
  const double secs = seconds_since(t0);
  return {ratio < bound && secs < 60.0, fmt("Loihi/x86 = %.4g (bound %.4g), %.1fs", ratio, bound, secs)};
}

// ---------------------------------------------------------------- reward

Outcome reward_table() {
  const env::RewardConfig cfg;
  env::WorldState prev;
  prev.robot.goal = {5.0, 0.0};
  env::WorldState closer = prev, farther = prev;
  closer.robot.position = {0.1, 0.0};
  farther.robot.position = {-0.1, 0.0};
  struct Case {
    const char* name;
    double got, want;
  };
  std::vector<Case> cases{
      {"goal", env::compute_reward(prev, prev, env::Outcome::kGoal, cfg).navigation, 4.0},
      {"collision", env::compute_reward(prev, prev, env::Outcome::kCollision, cfg).navigation, -4.0},
      {"timeout", env::compute_reward(prev, prev, env::Outcome::kTimeout, cfg).navigation, -4.0},
      {"progress", env::compute_reward(prev, closer, env::Outcome::kRunning, cfg).total, 0.01},
      {"regress", env::compute_reward(prev, farther, env::Outcome::kRunning, cfg).navigation, -0.02},
  };
  env::WorldState social = prev;
  env::AgentState h;
  h.position = {0.7, 0.0};
  h.velocity = {0.5, 0.0};
  h.r_prox = 0.5;
  social.humans.push_back(h);
  cases.push_back({"social", env::compute_reward(social, social, env::Outcome::kRunning, cfg).social, -1.129});
  double worst = 0.0;
  std::string failed;
  for (const auto& c : cases) {
    const double err = std::abs(c.got - c.want);
    worst = std::max(worst, err);
    if (err > 1e-12) failed += std::string(" ") + c.name;
  }
  return {failed.empty(), fmt("6 cases, max error %.3g%s", worst, failed.empty() ? "" : (" failing:" + failed).c_str())};
}

// ---------------------------------------------------------------- training

ppo::RunConfig reduced_config(policy::NeuronKind kind, std::uint64_t seed) {
  ppo::RunConfig cfg = ppo::RunConfig::defaults(kind);
  cfg.name = "reduced";
  cfg.scenario = env::ScenarioConfig::preset(env::ScenarioKind::kCircleInteraction);
  cfg.scenario.n_agents = 3;
  cfg.total_steps = 200000;
  cfg.seed = seed;
  return cfg;
}

struct TrainedRun {
  policy::PolicyParams params;
  double final_reward = 0.0;
  harness::AggregateReport report;
};

// Mean per-step reward over the last tenth of the updates.
double final_reward(const std::vector<ppo::UpdateRecord>& curve) {
  const std::size_t tail = std::max<std::size_t>(1, curve.size() / 10);
  double s = 0.0;
  for (std::size_t i = curve.size() - tail; i < curve.size(); ++i) s += curve[i].mean_step_reward;
  return s / static_cast<double>(tail);
}

TrainedRun train_and_eval(const ppo::RunConfig& cfg, std::size_t eval_episodes) {
  const ppo::TrainingResult res = ppo::train(cfg);
  TrainedRun run{res.params, final_reward(res.curve), {}};
  if (eval_episodes) {
    harness::EvalOptions o;
    o.n_episodes = eval_episodes;
    o.seed = 777;
    run.report = harness::run_episodes(policy::SpikingActorCritic(res.params), cfg.scenario, cfg.env, o).report;
  }
  return run;
}

Outcome reduced_training(std::vector<TrainedRun>& sd_runs) {
  const auto t0 = std::chrono::steady_clock::now();
  double goal = 0.0, col = 0.0;
  std::string per_seed;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    sd_runs.push_back(train_and_eval(reduced_config(policy::NeuronKind::kSigmaDelta, seed), 100));
    const auto& r = sd_runs.back().report;
    goal += r.goal_pct / 3.0;
    col += r.collision_pct / 3.0;
    per_seed += fmt(" [seed %llu: goal %.0f%% col %.0f%%]", static_cast<unsigned long long>(seed), r.goal_pct,
                    r.collision_pct);
  }
  return {goal >= 90.0 && col <= 5.0,
          fmt("mean goal %.1f%% (>= 90), collision %.1f%% (<= 5);", goal, col) + per_seed +
              fmt(" %.0fs", seconds_since(t0))};
}

Outcome cuba_vs_sd(const std::vector<TrainedRun>& sd_runs) {
  const auto t0 = std::chrono::steady_clock::now();
  double sd = 0.0, cuba = 0.0;
  for (const auto& r : sd_runs) sd += r.final_reward / static_cast<double>(sd_runs.size());
  for (std::uint64_t seed = 0; seed < 3; ++seed)
    cuba += train_and_eval(reduced_config(policy::NeuronKind::kCuba, seed), 0).final_reward / 3.0;
  return {sd >= cuba, fmt("final mean step reward SD %.4f vs CUBA %.4f, %.0fs", sd, cuba, seconds_since(t0))};
}

// ---------------------------------------------------------------- metrics

Outcome metrics_oracle() {
  std::vector<harness::Vec2> straight;
  std::vector<env::AgentState> robot;
  std::vector<std::vector<env::AgentState>> humans;
  env::AgentState far;
  far.position = {50.0, 50.0};
  far.r_prox = 0.5;
  for (int i = 0; i <= 16; ++i) {
    straight.push_back({0.25 * i, 0.0});
    env::AgentState r;
    r.position = straight.back();
    robot.push_back(r);
    humans.push_back({far});
  }
  harness::EpisodeMetrics m;
  m.outcome = env::Outcome::kGoal;
  m.detour_ratio = harness::detour_ratio(straight, {4.0, 0.0}, {0.0, 0.0});
  m.proxemic_violation_steps = harness::proxemic_violations(robot, humans);
  const harness::AggregateReport rep = harness::aggregate(std::span(&m, 1));
  const std::vector<harness::Vec2> tri{{0, 0}, {3, 0}, {3, 4}};
  const double dr_tri = *harness::detour_ratio(tri, {3, 4}, {0, 0});
  const bool ok = std::abs(*m.detour_ratio - 1.0) <= 1e-9 && m.proxemic_violation_steps == 0 &&
                  rep.goal_pct == 100.0 && dr_tri == 1.4;
  return {ok, fmt("straight DR %.12g PV %zu goal %.0f%%; triangle DR %.17g", *m.detour_ratio,
                  m.proxemic_violation_steps, rep.goal_pct, dr_tri)};
}

// ---------------------------------------------------------------- determinism

Outcome determinism() {
  const auto t0 = std::chrono::steady_clock::now();
  ppo::RunConfig cfg = reduced_config(policy::NeuronKind::kSigmaDelta, 42);
  cfg.total_steps = 3 * cfg.n_steps;
  auto curve_text = [&] {
    std::ostringstream out;
    for (const auto& r : ppo::train(cfg).curve) ppo::write_curve_row(out, r);
    return out.str();
  };
  const bool curves = curve_text() == curve_text();

  policy::SpikingActorCritic net(policy::PolicyParams::initialize(cfg.kind, cfg.network, cfg.init));
  harness::EvalOptions o;
  o.n_episodes = 5;
  o.seed = 9;
  o.keep_traces = true;
  auto eval_text = [&] {
    const harness::EvalResult ev = harness::run_episodes(net, cfg.scenario, cfg.env, o);
    std::ostringstream traj;
    harness::write_trajectories_jsonl(traj, ev.traces);
    return std::make_pair(traj.str(), harness::to_json(ev.report).dump());
  };
  const auto a = eval_text(), b = eval_text();
  const bool traj = a.first == b.first, report = a.second == b.second;
  return {curves && traj && report, fmt("curves %s, trajectories %s, reports %s, %.1fs", curves ? "same" : "differ",
                                        traj ? "same" : "differ", report ? "same" : "differ", seconds_since(t0))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria report"};
  bool skip_training = false;
  bool report_only = false;
  app.add_flag("--skip-training", skip_training, "Skip the criteria that need full training runs");
  app.add_flag("--report-only", report_only, "Exit 0 after printing, even if a blocking criterion fails");
  CLI11_PARSE(app, argc, argv);

  std::vector<TrainedRun> sd_runs;
  const ppo::RunConfig base = reduced_config(policy::NeuronKind::kSigmaDelta, 0);
  std::vector<Criterion> criteria{
      {"neuron_oracle", true, neuron_oracle},
      {"sd_reconstruction", true, sd_reconstruction},
      {"gradient_check", true, [&] { return gradient_check(base); }},
      {"energy_oracle", true, energy_oracle},
      {"reward_table", true, reward_table},
      {"metrics_oracle", true, metrics_oracle},
      {"determinism", true, determinism},
  };
  if (!skip_training) {
    criteria.push_back({"reduced_training", true, [&] { return reduced_training(sd_runs); }});
    criteria.push_back({"energy_ratio", true, [&] {
                          std::optional<policy::PolicyParams> p;
                          if (!sd_runs.empty()) p = sd_runs.front().params;
                          return energy_ratio(p, base);
                        }});
    criteria.push_back({"cuba_vs_sd", false, [&] { return cuba_vs_sd(sd_runs); }});
  }

  int blocking_failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass && c.blocking) ++blocking_failures;
    std::printf("%s %s%s: %s\n", o.pass ? "PASS" : "FAIL", c.name.c_str(), c.blocking ? "" : " (informational)",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d blocking criteria failed\n", blocking_failures);
  if (report_only) return 0;
  return blocking_failures == 0 ? 0 : 1;
}
