#include "spikenav/energymeter/energy.hpp"

#include <numeric>
#include <stdexcept>

namespace spikenav::energy {

const std::vector<DeviceProfile>& reference_devices() {
  static const std::vector<DeviceProfile> devices{
      {"CPU x86", 8.60e-9, 8.60e-9, false},  {"CPU ARM", 9.00e-10, 9.00e-10, false},
      {"GPU", 3.00e-10, 3.00e-10, false},    {"SpiNNaker", 1.33e-8, 2.60e-8, true},
      {"SpiNNaker 2", 4.50e-10, 2.19e-9, true}, {"Loihi", 2.71e-11, 8.10e-11, true},
  };
  return devices;
}

const DeviceProfile& device_by_name(const std::string& name) {
  for (const auto& d : reference_devices()) {
    if (d.name == name) return d;
  }
  throw std::out_of_range("unknown device '" + name + "'");
}

void ConnectivityMap::validate() const {
  if (fan_out.size() != target_width.size()) {
    throw EnergyShapeError("connectivity map: fan_out and target_width disagree on layer count");
  }
  for (std::size_t l = 0; l < fan_out.size(); ++l) {
    for (std::uint64_t c : fan_out[l]) {
      if (c > target_width[l]) {
        throw EnergyShapeError("fan-out exceeds the width of layer " + std::to_string(l + 1));
      }
    }
  }
}

std::uint64_t ConnectivityMap::total() const {
  std::uint64_t sum = 0;
  for (const auto& layer : fan_out) sum = std::accumulate(layer.begin(), layer.end(), sum);
  return sum;
}

std::vector<std::size_t> ConnectivityMap::widths() const {
  std::vector<std::size_t> w;
  for (const auto& layer : fan_out) w.push_back(layer.size());
  return w;
}

std::uint64_t count_synops_event_driven(const RasterSet& rasters, const ConnectivityMap& conn) {
  if (rasters.size() != conn.fan_out.size()) {
    throw EnergyShapeError("raster layer count " + std::to_string(rasters.size()) +
                           " vs connectivity " + std::to_string(conn.fan_out.size()));
  }
  std::uint64_t total = 0;
  for (std::size_t l = 0; l < rasters.size(); ++l) {
    const LayerRaster& r = rasters[l];
    const auto& fan = conn.fan_out[l];
    if (r.width != fan.size() || (r.width && r.values.size() % r.width != 0)) {
      throw EnergyShapeError("raster width mismatch in layer " + std::to_string(l));
    }
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      if (r.values[i] != 0.0) total += fan[i % r.width];
    }
  }
  return total;
}

std::uint64_t count_synops_dense(std::size_t steps, const ConnectivityMap& conn) {
  return static_cast<std::uint64_t>(steps) * conn.total();
}

std::uint64_t count_neuron_updates(std::size_t steps, std::span<const std::size_t> widths) {
  return static_cast<std::uint64_t>(steps) *
         std::accumulate(widths.begin(), widths.end(), std::uint64_t{0});
}

double device_joules(const DeviceProfile& device, std::uint64_t synops, std::uint64_t neuron_updates) {
  return static_cast<double>(synops) * device.e_synop +
         static_cast<double>(neuron_updates) * device.e_neuron;
}

double EnergyReport::joules(const std::string& device) const {
  for (const auto& d : devices) {
    if (d.device == device) return d.joules;
  }
  throw std::out_of_range("report has no device '" + device + "'");
}

EnergyReport& EnergyReport::operator+=(const EnergyReport& other) {
  if (devices.empty()) devices = other.devices;
  else {
    if (devices.size() != other.devices.size()) throw EnergyShapeError("device lists differ");
    for (std::size_t i = 0; i < devices.size(); ++i) {
      devices[i].synops += other.devices[i].synops;
      devices[i].joules += other.devices[i].joules;
    }
  }
  n_synops_event += other.n_synops_event;
  n_synops_dense += other.n_synops_dense;
  n_neuron_updates += other.n_neuron_updates;
  active_slots += other.active_slots;
  total_slots += other.total_slots;
  return *this;
}

EnergyReport estimate(const RasterSet& rasters, const ConnectivityMap& conn, std::size_t steps,
                      std::span<const std::size_t> widths, std::span<const DeviceProfile> devices) {
  conn.validate();
  EnergyReport report;
  report.n_synops_event = count_synops_event_driven(rasters, conn);
  report.n_synops_dense = count_synops_dense(steps, conn);
  report.n_neuron_updates = count_neuron_updates(steps, widths);
  for (const auto& r : rasters) {
    for (double v : r.values) report.active_slots += v != 0.0;
    report.total_slots += r.values.size();
  }
  for (const auto& device : devices) {
    const std::uint64_t synops = device.event_driven ? report.n_synops_event : report.n_synops_dense;
    report.devices.push_back(
        {device.name, device.event_driven, synops, device_joules(device, synops, report.n_neuron_updates)});
  }
  return report;
}

}  // namespace spikenav::energy
