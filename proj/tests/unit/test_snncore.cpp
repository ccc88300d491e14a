#include <cmath>
#include <random>

#include "doctest.h"
#include "spikenav/snncore/coding.hpp"

using namespace spikenav;
using namespace spikenav::snn;
using diff::Tensor;

namespace {

struct ScalarCuba {
  double current = 0, v = 0;
  double step(double x, const CubaParams& p, double& pre) {
    current = p.alpha_i * current + x;
    v = p.alpha_v * v + current;
    pre = v;
    const double s = v >= p.v_th ? 1.0 : 0.0;
    v = v - v * s;
    return s;
  }
};

struct ScalarSd {
  double pot = 0, recon = 0;
  double step(double x, const SdParams& p) {
    const double u = pot + (x - recon);
    const double s = std::abs(u) >= p.v_th ? u : 0.0;
    recon = recon + s;
    pot = u - s;
    return s;
  }
};

Tensor row(std::vector<double> v) {
  const std::size_t n = v.size();
  return Tensor({1, n}, std::move(v));
}

}  // namespace

TEST_CASE("cuba step matches the scalar recurrence over a sequence") {
  CubaParams p{1.0, 0.6, 0.8, 0.5, 1.0};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  const std::size_t n = 8;
  std::vector<ScalarCuba> ref(n);
  NeuronLayerState st = NeuronLayerState::zeros({1, n});
  for (int t = 0; t < 30; ++t) {
    std::vector<double> x(n);
    for (double& v : x) v = u(rng);
    NeuronStep out = cuba_step(st, row(x), p);
    for (std::size_t i = 0; i < n; ++i) {
      double pre = 0;
      const double s = ref[i].step(x[i], p, pre);
      REQUIRE(out.spikes.at(i) == s);
      REQUIRE(out.pre_reset.at(i) == pre);
      REQUIRE(out.state.potential.at(i) == ref[i].v);
      REQUIRE(out.state.current.at(i) == ref[i].current);
    }
    st = out.state;
  }
}

TEST_CASE("cuba spike resets the membrane to zero") {
  CubaParams p{1.0, 0.5, 0.5, 1.0, 1.0};
  NeuronStep out = cuba_step(NeuronLayerState::zeros({1, 1}), row({1.2}), p);
  CHECK(out.spikes.at(0) == 1.0);
  CHECK(out.state.potential.at(0) == 0.0);
  CHECK(out.state.current.at(0) == 1.2);
}

TEST_CASE("sd step matches the scalar recurrence") {
  SdParams p{0.3, 0.2, 1.0};
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 6;
  std::vector<ScalarSd> ref(n);
  NeuronLayerState st = NeuronLayerState::zeros({1, n});
  for (int t = 0; t < 30; ++t) {
    std::vector<double> x(n);
    for (double& v : x) v = u(rng);
    NeuronStep out = sd_step(st, row(x), p);
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(out.spikes.at(i) == ref[i].step(x[i], p));
      REQUIRE(out.state.reconstruction.at(i) == ref[i].recon);
      REQUIRE(out.state.potential.at(i) == ref[i].pot);
    }
    st = out.state;
  }
}

TEST_CASE("sd reconstruction tracks a constant input") {
  SdParams p{0.25, 0.2, 1.0};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double x = u(rng);
    NeuronLayerState st = NeuronLayerState::zeros({1, 1});
    double mass = 0;
    for (int t = 0; t < 16; ++t) {
      NeuronStep out = sd_step(st, row({x}), p);
      mass += out.spikes.at(0);
      st = out.state;
    }
    CHECK(std::abs(st.reconstruction.at(0) - x) < p.v_th);
    CHECK(std::abs(mass - st.reconstruction.at(0)) <= 1e-12);
  }
}

TEST_CASE("sd below threshold stays silent") {
  SdParams p{1.0, 0.5, 1.0};
  NeuronLayerState st = NeuronLayerState::zeros({1, 1});
  // Input 0.2 with nothing transmitted: the error accumulates by 0.2 a step.
  for (int t = 0; t < 4; ++t) {
    NeuronStep out = sd_step(st, row({0.2}), p);
    CHECK(out.spikes.at(0) == 0.0);
    st = out.state;
  }
  NeuronStep out = sd_step(st, row({0.2}), p);
  CHECK(out.spikes.at(0) == doctest::Approx(1.0));
  CHECK(out.state.potential.at(0) == doctest::Approx(0.0));
}

TEST_CASE("dense layer raster shapes and binary cuba output") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> w(5 * 3), b(5);
  for (double& v : w) v = u(rng);
  for (double& v : b) v = u(rng);
  Tensor W({5, 3}, w), B({5}, b);
  Sequence seq;
  for (int t = 0; t < 4; ++t) seq.push_back(Tensor({2, 3}, {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)}));
  DenseForward f = spiking_dense_forward(W, B, seq, CubaParams{0.5, 0.5, 0.5, 0.5, 1.0});
  CHECK(f.raster.time_steps() == 4);
  CHECK(f.raster.width() == 5);
  CHECK(f.raster.batch() == 2);
  for (const auto& s : f.raster.steps)
    for (double v : s.data()) CHECK((v == 0.0 || v == 1.0));
  CHECK(f.raster.as_matrix(1).shape() == diff::Shape{4, 5});
  CHECK_THROWS_AS(spiking_dense_forward(W, B, {Tensor::zeros({1, 4})}, SdParams{}), diff::DimensionError);
  CHECK_THROWS_AS(spiking_dense_forward(W, B, seq, CubaParams{}, InputCoding::kSigma), std::invalid_argument);
}

TEST_CASE("sigma coding integrates graded deltas back into the signal") {
  // An SD encoder feeding an identity sigma layer with tiny threshold passes
  // the original signal through up to threshold error.
  SdParams enc{0.05, 0.05, 1.0};
  SdParams dec{1e-9, 1e-9, 1.0};
  Sequence input;
  for (double x : {0.3, 0.7, 0.7, -0.2, 0.0}) input.push_back(row({x}));
  Tensor eye({1, 1}, {1.0});
  DenseForward a = spiking_dense_forward(eye, Tensor(), input, enc);
  DenseForward b = spiking_dense_forward(eye, Tensor(), a.raster.steps, dec, InputCoding::kSigma);
  for (std::size_t t = 0; t < input.size(); ++t) {
    double recon = 0;
    for (std::size_t s = 0; s <= t; ++s) recon += b.raster.steps[s].at(0);
    CHECK(std::abs(recon - input[t].at(0)) < enc.v_th + 1e-12);
  }
}

TEST_CASE("encoding and decoding") {
  Tensor obs({2, 3}, {1, 2, 3, 4, 5, 6});
  Tensor enc = encode_current(obs);
  CHECK(enc.shape() == diff::Shape{3, 2});
  CHECK(enc.at(2, 1) == 6);
  std::vector<Tensor> batch{obs, obs};
  Sequence seq = encode_current_batch(batch);
  REQUIRE(seq.size() == 3);
  CHECK(seq[1].shape() == diff::Shape{2, 2});
  CHECK(seq[1].at(1, 1) == 5);
  SpikeRaster r{{row({1, 0}), row({1, 1}), row({0, 1}), row({0, 0})}};
  Tensor rate = decode_rate(r);
  CHECK(rate.at(0) == 0.5);
  CHECK(rate.at(1) == 0.5);
  CHECK_THROWS_AS(decode_rate(SpikeRaster{}), diff::ContractError);
  CHECK_THROWS_AS(decode_membrane({}), diff::ContractError);
  std::vector<Tensor> mixed{obs, Tensor::zeros({2, 2})};
  CHECK_THROWS_AS(encode_current_batch(mixed), diff::DimensionError);
}

TEST_CASE("cuba readout integrates without threshold") {
  CubaParams p{1.0, 0.5, 0.5, 1.0, 1.0};
  Tensor w({1, 1}, {2.0});
  Sequence seq{row({1.0}), row({1.0}), row({0.0})};
  Sequence m = membrane_readout(w, Tensor(), seq, p);
  CHECK(m[0].at(0) == 2.0);
  CHECK(m[1].at(0) == doctest::Approx(0.5 * 2 + (0.5 * 2 + 2)));
}

TEST_CASE("neuron kind names") {
  CHECK(neuron_kind_from_string("sd") == NeuronKind::kSigmaDelta);
  CHECK(neuron_kind_from_string("cuba") == NeuronKind::kCuba);
  CHECK(to_string(NeuronKind::kCuba) == "cuba");
  CHECK_THROWS(neuron_kind_from_string("lif"));
  CHECK_THROWS(CubaParams{1.0, 1.5, 0.5, 1.0, 1.0}.validate());
  CHECK_THROWS(SdParams{0.0, 1.0, 1.0}.validate());
}
