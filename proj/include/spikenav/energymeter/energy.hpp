#ifndef SPIKENAV_ENERGYMETER_ENERGY_HPP_
#define SPIKENAV_ENERGYMETER_ENERGY_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spikenav::energy {

struct DeviceProfile {
  std::string name;
  double e_synop = 0.0;   // J per synaptic operation
  double e_neuron = 0.0;  // J per neuron update
  bool event_driven = false;
};

// CPU x86, CPU ARM, GPU (dense) and SpiNNaker, SpiNNaker 2, Loihi
// (event-driven), in that order.
const std::vector<DeviceProfile>& reference_devices();
const DeviceProfile& device_by_name(const std::string& name);

// Activity of one layer over an inference, row-major [steps x width]. Any
// nonzero entry (binary or graded) is one event.
struct LayerRaster {
  std::size_t width = 0;
  std::vector<double> values;

  std::size_t steps() const { return width ? values.size() / width : 0; }
  bool active(std::size_t t, std::size_t n) const { return values[t * width + n] != 0.0; }
};

using RasterSet = std::vector<LayerRaster>;

// fan_out[l][n]: nonzero outgoing synapses of neuron n in layer l.
struct ConnectivityMap {
  std::vector<std::vector<std::uint64_t>> fan_out;
  // Width of the layer each layer projects into (0 for the last layer).
  std::vector<std::size_t> target_width;

  void validate() const;
  std::uint64_t total() const;
  std::vector<std::size_t> widths() const;
};

class EnergyShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::uint64_t count_synops_event_driven(const RasterSet& rasters, const ConnectivityMap& conn);
std::uint64_t count_synops_dense(std::size_t steps, const ConnectivityMap& conn);
std::uint64_t count_neuron_updates(std::size_t steps, std::span<const std::size_t> widths);

double device_joules(const DeviceProfile& device, std::uint64_t synops, std::uint64_t neuron_updates);

struct DeviceEnergy {
  std::string device;
  bool event_driven = false;
  std::uint64_t synops = 0;
  double joules = 0.0;
};

struct EnergyReport {
  std::uint64_t n_synops_event = 0;
  std::uint64_t n_synops_dense = 0;
  std::uint64_t n_neuron_updates = 0;
  std::uint64_t active_slots = 0;
  std::uint64_t total_slots = 0;
  std::vector<DeviceEnergy> devices;

  // Fraction of (t, layer, neuron) slots holding a spike.
  double sparsity() const {
    return total_slots ? static_cast<double>(active_slots) / static_cast<double>(total_slots) : 0.0;
  }
  double joules(const std::string& device) const;
  // Per-episode totals are sums of per-inference reports.
  EnergyReport& operator+=(const EnergyReport& other);
};

// Event-driven devices are charged the event synop count, dense devices the
// dense count; every device pays for every neuron at every step.
EnergyReport estimate(const RasterSet& rasters, const ConnectivityMap& conn, std::size_t steps,
                      std::span<const std::size_t> widths,
                      std::span<const DeviceProfile> devices = reference_devices());

}  // namespace spikenav::energy

#endif  // SPIKENAV_ENERGYMETER_ENERGY_HPP_
