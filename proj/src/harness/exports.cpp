#include "spikenav/harness/exports.hpp"

#include <iomanip>
#include <ostream>

namespace spikenav::harness {

using nlohmann::json;

namespace {

json vec(env::Vec2 v) { return json::array({v.x, v.y}); }

}  // namespace

void write_trajectories_jsonl(std::ostream& out, std::span<const EpisodeTrace> traces) {
  for (const auto& tr : traces) {
    json steps = json::array();
    for (const auto& s : tr.steps) {
      json humans = json::array();
      for (const auto& h : s.humans) {
        humans.push_back({{"position", vec(h.position)}, {"velocity", vec(h.velocity)}, {"r_prox", h.r_prox}});
      }
      steps.push_back({{"t", s.t},
                       {"robot", {{"position", vec(s.robot.position)},
                                  {"velocity", vec(s.robot.velocity)},
                                  {"heading", s.robot.heading}}},
                       {"humans", std::move(humans)},
                       {"action", {s.action.speed, s.action.d_heading}},
                       {"reward", s.reward}});
    }
    json line{{"episode", tr.episode},
              {"seed", tr.seed},
              {"outcome", std::string(env::to_string(tr.outcome))},
              {"goal", tr.steps.empty() ? json() : vec(tr.steps.front().robot.goal)},
              {"radius", tr.steps.empty() ? 0.0 : tr.steps.front().robot.radius},
              {"steps", std::move(steps)}};
    out << line.dump() << '\n';
  }
}

void write_rasters_jsonl(std::ostream& out, std::span<const EpisodeTrace> traces) {
  static const char* kLayerNames[] = {"input", "sfe", "san", "readout"};
  for (const auto& tr : traces) {
    for (std::size_t step = 0; step < tr.rasters.size(); ++step) {
      json layers = json::object();
      const auto& set = tr.rasters[step].layers;
      for (std::size_t l = 0; l < set.size(); ++l) {
        const std::string name = l < 4 ? kLayerNames[l] : "layer" + std::to_string(l);
        layers[name] = {{"width", set[l].width}, {"values", set[l].values}};
      }
      out << json{{"episode", tr.episode}, {"step", step}, {"layers", std::move(layers)}}.dump() << '\n';
    }
  }
}

void write_energy_csv(std::ostream& out, const std::string& scenario, std::span<const EpisodeMetrics> metrics) {
  out << "scenario,episode,device,joules,synops,sparsity\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    const auto& e = metrics[i].episode_energy;
    for (const auto& dev : e.devices) {
      out << scenario << ',' << i << ',' << dev.device << ',' << dev.joules << ',' << dev.synops << ','
          << e.sparsity() << '\n';
    }
  }
}

json to_json(const EpisodeMetrics& m) {
  json energy = json::object();
  for (const auto& dev : m.episode_energy.devices) energy[dev.device] = dev.joules;
  return {{"outcome", std::string(env::to_string(m.outcome))},
          {"steps", m.steps},
          {"traveled_distance", m.traveled_distance},
          {"ideal_distance", m.ideal_distance},
          {"detour_ratio", m.detour_ratio ? json(*m.detour_ratio) : json()},
          {"proxemic_violations", m.proxemic_violation_steps},
          {"episode_return", m.episode_return},
          {"sparsity", m.episode_energy.sparsity()},
          {"energy_joules", std::move(energy)}};
}

json to_json(const AggregateReport& r) {
  json energy = json::object();
  for (const auto& [name, ms] : r.energy) energy[name] = {{"mean", ms.mean}, {"std", ms.std}};
  return {{"episodes", r.episodes},
          {"goal_pct", r.goal_pct},
          {"collision_pct", r.collision_pct},
          {"timeout_pct", r.timeout_pct},
          {"pv_total", r.pv_total},
          {"dr_mean", r.dr_mean},
          {"dr_std", r.dr_std},
          {"dr_count", r.dr_count},
          {"dr_note", AggregateReport::kDetourNote},
          {"sparsity_mean", r.sparsity_mean},
          {"energy_joules", std::move(energy)}};
}

void print_report(std::ostream& out, const AggregateReport& r) {
  out << std::fixed << std::setprecision(2);
  out << "episodes   " << r.episodes << '\n'
      << "goal       " << r.goal_pct << " %\n"
      << "collision  " << r.collision_pct << " %\n"
      << "timeout    " << r.timeout_pct << " %\n"
      << "PV         " << r.pv_total << '\n'
      << "DR         " << std::setprecision(3) << r.dr_mean << " +- " << r.dr_std << "  (" << r.dr_count
      << " episodes; " << AggregateReport::kDetourNote << ")\n";
  out << std::defaultfloat;
}

void print_energy_table(std::ostream& out, const AggregateReport& r) {
  out << std::left << std::setw(14) << "device" << std::right << std::setw(16) << "mean [uJ]" << std::setw(16)
      << "std [uJ]" << '\n';
  for (const auto& [name, ms] : r.energy) {
    out << std::left << std::setw(14) << name << std::right << std::scientific << std::setprecision(4)
        << std::setw(16) << ms.mean * 1e6 << std::setw(16) << ms.std * 1e6 << '\n';
  }
  out << std::defaultfloat << "mean sparsity " << r.sparsity_mean << '\n';
}

}  // namespace spikenav::harness
