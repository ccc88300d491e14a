#include "spikenav/policynet/policy.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <variant>

namespace spikenav::policy {

namespace d = spikenav::diff;

NeuronConstants NeuronConstants::defaults(NeuronKind kind) {
  if (kind == NeuronKind::kCuba) {
    return {snn::CubaParams{0.31, 0.77, 0.49, 0.55, 2.34},
            snn::CubaParams{0.93, 0.16, 0.78, 0.21, 3.47}};
  }
  return {snn::SdParams{0.14, 0.82, 0.16}, snn::SdParams{0.26, 0.44, 0.58}};
}

namespace {

Tensor uniform_tensor(d::Shape shape, double bound, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  std::vector<double> data(d::shape_numel(shape));
  for (double& v : data) v = dist(rng);
  return Tensor(std::move(shape), std::move(data), true);
}

void init_layer(Tensor& w, Tensor& b, std::size_t out, std::size_t in, double gain,
                std::mt19937_64& rng) {
  const double bound = gain / std::sqrt(static_cast<double>(in));
  w = uniform_tensor({out, in}, bound, rng);
  b = uniform_tensor({out}, bound, rng);
}

void validate_neuron(const NeuronParams& p, NeuronKind kind) {
  if (snn::kind_of(p) != kind) throw std::invalid_argument("neuron constants do not match the policy kind");
  std::visit([](const auto& q) { q.validate(); }, p);
}

}  // namespace

PolicyParams PolicyParams::initialize(NeuronKind kind, const NetworkShape& shape,
                                      const InitOptions& init) {
  return initialize(kind, shape, init, NeuronConstants::defaults(kind));
}

PolicyParams PolicyParams::initialize(NeuronKind kind, const NetworkShape& shape,
                                      const InitOptions& init, const NeuronConstants& neurons) {
  PolicyParams p;
  p.kind = kind;
  p.neurons = neurons;
  p.shape = shape;
  std::mt19937_64 rng(init.seed);
  init_layer(p.sfe_w, p.sfe_b, shape.sfe_width, shape.obs_rows, 1.0, rng);
  init_layer(p.san_w, p.san_b, shape.san_width, shape.sfe_width, 1.0, rng);
  init_layer(p.readout_w, p.readout_b, NetworkShape::kActionDim, shape.san_width, init.readout_gain, rng);
  init_layer(p.critic1_w, p.critic1_b, shape.critic_width, shape.sfe_width, 1.0, rng);
  init_layer(p.critic2_w, p.critic2_b, shape.critic_width, shape.critic_width, 1.0, rng);
  init_layer(p.value_w, p.value_b, 1, shape.critic_width, init.value_head_gain, rng);
  const double heading_std = std::isnan(init.log_std_heading) ? init.log_std : init.log_std_heading;
  p.log_std = Tensor({NetworkShape::kActionDim}, {init.log_std, heading_std}, true);
  p.validate();
  return p;
}

std::vector<NamedTensor> PolicyParams::named() const {
  return {{"sfe.weight", sfe_w},         {"sfe.bias", sfe_b},
          {"san.weight", san_w},         {"san.bias", san_b},
          {"readout.weight", readout_w}, {"readout.bias", readout_b},
          {"critic1.weight", critic1_w}, {"critic1.bias", critic1_b},
          {"critic2.weight", critic2_w}, {"critic2.bias", critic2_b},
          {"value.weight", value_w},     {"value.bias", value_b},
          {"log_std", log_std}};
}

std::vector<Tensor> PolicyParams::trainable() const {
  std::vector<Tensor> out;
  for (auto& nt : named()) out.push_back(nt.tensor);
  return out;
}

void PolicyParams::validate() const {
  validate_neuron(neurons.sfe, kind);
  validate_neuron(neurons.san, kind);
  auto expect = [](const Tensor& t, d::Shape shape, const char* name) {
    if (!t.defined() || t.shape() != shape) {
      throw d::DimensionError(std::string(name) + " should be " + d::shape_string(shape));
    }
  };
  const auto& s = shape;
  expect(sfe_w, {s.sfe_width, s.obs_rows}, "sfe.weight");
  expect(sfe_b, {s.sfe_width}, "sfe.bias");
  // The SFE raster is the SAN input, spike domain end to end.
  expect(san_w, {s.san_width, s.sfe_width}, "san.weight");
  expect(san_b, {s.san_width}, "san.bias");
  expect(readout_w, {NetworkShape::kActionDim, s.san_width}, "readout.weight");
  expect(readout_b, {NetworkShape::kActionDim}, "readout.bias");
  expect(critic1_w, {s.critic_width, s.sfe_width}, "critic1.weight");
  expect(critic1_b, {s.critic_width}, "critic1.bias");
  expect(critic2_w, {s.critic_width, s.critic_width}, "critic2.weight");
  expect(critic2_b, {s.critic_width}, "critic2.bias");
  expect(value_w, {1, s.critic_width}, "value.weight");
  expect(value_b, {1}, "value.bias");
  expect(log_std, {NetworkShape::kActionDim}, "log_std");
}

SpikingActorCritic::SpikingActorCritic(PolicyParams params) : params_(std::move(params)) {
  params_.validate();
}

snn::InputCoding SpikingActorCritic::spike_coding() const {
  return params_.kind == NeuronKind::kSigmaDelta ? snn::InputCoding::kSigma : snn::InputCoding::kCurrent;
}

snn::SpikeRaster SpikingActorCritic::run_sfe(const snn::Sequence& inputs) const {
  for (const auto& x : inputs) {
    if (x.cols() != params_.shape.obs_rows) {
      throw d::DimensionError("observation has " + std::to_string(x.cols()) + " rows, policy expects " +
                              std::to_string(params_.shape.obs_rows));
    }
  }
  return snn::spiking_dense_forward(params_.sfe_w, params_.sfe_b, inputs, params_.neurons.sfe).raster;
}

ActorOutput SpikingActorCritic::run_actor(snn::Sequence inputs, snn::SpikeRaster sfe) const {
  ActorOutput out;
  out.san = snn::spiking_dense_forward(params_.san_w, params_.san_b, sfe.steps, params_.neurons.san,
                                       spike_coding())
                .raster;
  out.readout_membrane = snn::membrane_readout(params_.readout_w, params_.readout_b, out.san.steps,
                                               params_.neurons.san, spike_coding());
  out.pre_mean = snn::decode_membrane(out.readout_membrane);
  out.log_std = params_.log_std;
  out.inputs = std::move(inputs);
  out.sfe = std::move(sfe);
  return out;
}

Tensor SpikingActorCritic::run_critic(const snn::SpikeRaster& sfe) const {
  Tensor features = snn::decode_rate(sfe);
  Tensor h1 = d::tanh(d::linear(features, params_.critic1_w, params_.critic1_b));
  Tensor h2 = d::tanh(d::linear(h1, params_.critic2_w, params_.critic2_b));
  Tensor v = d::linear(h2, params_.value_w, params_.value_b);
  return d::reshape(v, {v.rows()});
}

ActorOutput SpikingActorCritic::actor_forward(std::span<const ObservationMatrix> obs) const {
  std::vector<Tensor> mats;
  for (const auto& o : obs) mats.push_back(o.data);
  snn::Sequence inputs = snn::encode_current_batch(mats);
  snn::SpikeRaster sfe = run_sfe(inputs);
  return run_actor(std::move(inputs), std::move(sfe));
}

Tensor SpikingActorCritic::critic_forward(std::span<const ObservationMatrix> obs) const {
  std::vector<Tensor> mats;
  for (const auto& o : obs) mats.push_back(o.data);
  return run_critic(run_sfe(snn::encode_current_batch(mats)));
}

JointOutput SpikingActorCritic::forward(std::span<const ObservationMatrix> obs) const {
  std::vector<Tensor> mats;
  for (const auto& o : obs) mats.push_back(o.data);
  snn::Sequence inputs = snn::encode_current_batch(mats);
  snn::SpikeRaster sfe = run_sfe(inputs);
  Tensor value = run_critic(sfe);
  return {run_actor(std::move(inputs), std::move(sfe)), std::move(value)};
}

Vec2d SpikingActorCritic::pre_mean(const ActorOutput& out, std::size_t sample) const {
  const auto m = out.pre_mean.data();
  return {m[sample * 2], m[sample * 2 + 1]};
}

Vec2d SpikingActorCritic::log_std() const {
  const auto s = params_.log_std.data();
  return {s[0], s[1]};
}

env::Action SpikingActorCritic::mean_action(const ObservationMatrix& obs, const ActionBounds& bounds) const {
  d::NoGradGuard no_grad;
  const ActorOutput out = actor_forward(std::span(&obs, 1));
  return squash_action(pre_mean(out), bounds);
}

energy::ConnectivityMap SpikingActorCritic::connectivity() const {
  // Fan-out of neuron n = nonzero entries in column n of the next layer.
  auto column_fan_out = [](const Tensor& w) {
    std::vector<std::uint64_t> fan(w.cols(), 0);
    const auto data = w.data();
    for (std::size_t r = 0; r < w.rows(); ++r)
      for (std::size_t c = 0; c < w.cols(); ++c) fan[c] += data[r * w.cols() + c] != 0.0;
    return fan;
  };
  energy::ConnectivityMap conn;
  conn.fan_out = {column_fan_out(params_.sfe_w), column_fan_out(params_.san_w),
                  column_fan_out(params_.readout_w),
                  std::vector<std::uint64_t>(NetworkShape::kActionDim, 0)};
  conn.target_width = {params_.shape.sfe_width, params_.shape.san_width, NetworkShape::kActionDim, 0};
  return conn;
}

energy::RasterSet SpikingActorCritic::energy_rasters(const ActorOutput& out, std::size_t sample) const {
  auto layer = [sample](const snn::Sequence& seq) {
    energy::LayerRaster r;
    r.width = seq.empty() ? 0 : seq.front().cols();
    for (const auto& step : seq) {
      const auto row = step.data().subspan(sample * r.width, r.width);
      r.values.insert(r.values.end(), row.begin(), row.end());
    }
    return r;
  };
  energy::LayerRaster readout;
  readout.width = NetworkShape::kActionDim;
  // The readout integrates but never emits events.
  readout.values.assign(out.readout_membrane.size() * readout.width, 0.0);
  return {layer(out.inputs), layer(out.sfe.steps), layer(out.san.steps), std::move(readout)};
}

}  // namespace spikenav::policy
