#ifndef SPIKENAV_HARNESS_EXPORTS_HPP_
#define SPIKENAV_HARNESS_EXPORTS_HPP_

#include <iosfwd>
#include <json.hpp>
#include <span>
#include <string>

#include "spikenav/harness/evaluation.hpp"

namespace spikenav::harness {

// One JSON object per line and per episode: seed, outcome, and per step the
// robot pose/velocity, human positions and the applied action.
void write_trajectories_jsonl(std::ostream& out, std::span<const EpisodeTrace> traces);
// One line per inference: episode, step and the per-layer rasters.
void write_rasters_jsonl(std::ostream& out, std::span<const EpisodeTrace> traces);

// Header `scenario,episode,device,joules,synops,sparsity`; one row per
// (episode, device).
void write_energy_csv(std::ostream& out, const std::string& scenario, std::span<const EpisodeMetrics> metrics);

nlohmann::json to_json(const AggregateReport& report);
nlohmann::json to_json(const EpisodeMetrics& metrics);
// Human-readable summary table.
void print_report(std::ostream& out, const AggregateReport& report);
void print_energy_table(std::ostream& out, const AggregateReport& report);

}  // namespace spikenav::harness

#endif  // SPIKENAV_HARNESS_EXPORTS_HPP_
