#include <cmath>
#include <random>

#include "doctest.h"
#include "spikenav/energymeter/energy.hpp"

using namespace spikenav::energy;

namespace {

struct RandomNet {
  RasterSet rasters;
  ConnectivityMap conn;
  std::size_t steps = 0;
};

RandomNet random_net(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> width(1, 12), steps(1, 10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RandomNet net;
  net.steps = steps(rng);
  const std::size_t layers = 2 + rng() % 3;
  std::vector<std::size_t> w(layers);
  for (auto& x : w) x = width(rng);
  for (std::size_t l = 0; l < layers; ++l) {
    const std::size_t target = l + 1 < layers ? w[l + 1] : 0;
    std::vector<std::uint64_t> fan(w[l]);
    for (auto& f : fan) f = target ? rng() % (target + 1) : 0;
    net.conn.fan_out.push_back(fan);
    net.conn.target_width.push_back(target);
    LayerRaster r;
    r.width = w[l];
    for (std::size_t i = 0; i < net.steps * w[l]; ++i) {
      const double p = u(rng);
      r.values.push_back(p < 0.6 ? 0.0 : (p < 0.8 ? 1.0 : u(rng) - 0.5));
    }
    net.rasters.push_back(r);
  }
  return net;
}

std::uint64_t brute_force(const RandomNet& net) {
  std::uint64_t n = 0;
  for (std::size_t l = 0; l < net.rasters.size(); ++l)
    for (std::size_t t = 0; t < net.steps; ++t)
      for (std::size_t i = 0; i < net.rasters[l].width; ++i)
        if (net.rasters[l].active(t, i)) n += net.conn.fan_out[l][i];
  return n;
}

}  // namespace

TEST_CASE("event-driven synops equal a brute-force count") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const RandomNet net = random_net(rng);
    CHECK(count_synops_event_driven(net.rasters, net.conn) == brute_force(net));
  }
}

TEST_CASE("dense synops and neuron updates") {
  ConnectivityMap conn{{{2, 1}, {3, 3, 3}, {0}}, {3, 1, 0}};
  CHECK(conn.total() == 12);
  CHECK(count_synops_dense(4, conn) == 48);
  const auto widths = conn.widths();
  CHECK(widths == std::vector<std::size_t>{2, 3, 1});
  CHECK(count_neuron_updates(4, widths) == 24);
}

TEST_CASE("loihi arithmetic example") {
  const double j = device_joules(device_by_name("Loihi"), 1000, 500);
  CHECK(std::abs(j - 6.76e-8) <= 1e-12 * 6.76e-8);
}

TEST_CASE("reference device table") {
  const auto& devs = reference_devices();
  REQUIRE(devs.size() == 6);
  CHECK(devs[0].name == "CPU x86");
  CHECK(devs[0].e_synop == 8.60e-9);
  CHECK(devs[5].e_neuron == 8.10e-11);
  CHECK_FALSE(devs[2].event_driven);
  CHECK(devs[3].event_driven);
  CHECK_THROWS_AS(device_by_name("TPU"), std::out_of_range);
}

TEST_CASE("estimate charges event and dense counts by device class") {
  std::mt19937_64 rng(8);
  const RandomNet net = random_net(rng);
  const auto widths = net.conn.widths();
  const EnergyReport rep = estimate(net.rasters, net.conn, net.steps, widths);
  REQUIRE(rep.devices.size() == 6);
  for (const auto& d : rep.devices) {
    const auto& prof = device_by_name(d.device);
    CHECK(d.synops == (prof.event_driven ? rep.n_synops_event : rep.n_synops_dense));
    CHECK(d.joules == device_joules(prof, d.synops, rep.n_neuron_updates));
  }
  CHECK(rep.n_synops_event <= rep.n_synops_dense);
  EnergyReport sum = rep;
  sum += rep;
  CHECK(sum.n_synops_event == 2 * rep.n_synops_event);
  CHECK(sum.joules("Loihi") == doctest::Approx(2 * rep.joules("Loihi")));
  CHECK(sum.sparsity() == doctest::Approx(rep.sparsity()));
}

TEST_CASE("silent raster costs only neuron updates on event-driven devices") {
  ConnectivityMap conn{{{2, 2}, {0, 0}}, {2, 0}};
  RasterSet r{{2, std::vector<double>(6, 0.0)}, {2, std::vector<double>(6, 0.0)}};
  const auto widths = conn.widths();
  const EnergyReport rep = estimate(r, conn, 3, widths);
  CHECK(rep.n_synops_event == 0);
  CHECK(rep.sparsity() == 0.0);
  CHECK(rep.joules("Loihi") == doctest::Approx(12 * 8.10e-11));
}

TEST_CASE("shape errors") {
  ConnectivityMap conn{{{1, 1}}, {1}};
  CHECK_THROWS_AS(count_synops_event_driven({}, conn), EnergyShapeError);
  CHECK_THROWS_AS(count_synops_event_driven({{3, std::vector<double>(3)}}, conn), EnergyShapeError);
  ConnectivityMap bad{{{5}}, {2}};
  CHECK_THROWS_AS(bad.validate(), EnergyShapeError);
}

namespace {

EnergyReport half_active_estimate(const std::vector<std::size_t>& widths, std::size_t steps) {
  ConnectivityMap conn;
  RasterSet rasters;
  for (std::size_t l = 0; l < widths.size(); ++l) {
    const std::size_t next = l + 1 < widths.size() ? widths[l + 1] : 0;
    conn.fan_out.emplace_back(widths[l], next);
    conn.target_width.push_back(next);
    LayerRaster r{widths[l], std::vector<double>(widths[l] * steps, 0.0)};
    for (std::size_t i = 0; i < r.values.size(); i += 2) r.values[i] = 1.0;
    rasters.push_back(std::move(r));
  }
  return estimate(rasters, conn, steps, widths);
}

}  // namespace

TEST_CASE("device ordering depends on fan-out") {
  const EnergyReport wide = half_active_estimate({23, 64, 64, 2}, 2);
  CHECK(wide.joules("Loihi") < wide.joules("SpiNNaker 2"));
  CHECK(wide.joules("SpiNNaker 2") < wide.joules("GPU"));
  // With fan-out 2, per-neuron update cost outweighs the skipped synapses.
  const EnergyReport narrow = half_active_estimate({2, 2}, 1);
  CHECK(narrow.joules("Loihi") < narrow.joules("SpiNNaker 2"));
  CHECK(narrow.joules("SpiNNaker 2") > narrow.joules("GPU"));
}
