#include "spikenav/policynet/checkpoint.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

namespace spikenav::policy {

namespace {

constexpr std::uint8_t kTagSd = 0;
constexpr std::uint8_t kTagCuba = 1;
constexpr std::uint32_t kMaxName = 256;
constexpr std::uint32_t kMaxDims = 8;

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void bytes(const char* p, std::size_t n) { out_.write(p, static_cast<std::streamsize>(n)); }
  template <typename U>
  void uint(U v) {
    std::array<char, sizeof(U)> buf;
    for (std::size_t i = 0; i < sizeof(U); ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    bytes(buf.data(), buf.size());
  }
  void f64(double v) { uint(std::bit_cast<std::uint64_t>(v)); }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(char* p, std::size_t n) {
    in_.read(p, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) throw CheckpointError("checkpoint truncated");
  }
  template <typename U>
  U uint() {
    std::array<unsigned char, sizeof(U)> buf;
    bytes(reinterpret_cast<char*>(buf.data()), buf.size());
    U v = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(buf[i]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(uint<std::uint64_t>()); }

 private:
  std::istream& in_;
};

void write_neuron(Writer& w, const NeuronParams& p) {
  if (const auto* cuba = std::get_if<snn::CubaParams>(&p)) {
    for (double v : {cuba->v_th, cuba->alpha_i, cuba->alpha_v, cuba->tau_grad, cuba->s_grad}) w.f64(v);
  } else {
    const auto& sd = std::get<snn::SdParams>(p);
    for (double v : {sd.v_th, 0.0, 0.0, sd.tau_grad, sd.s_grad}) w.f64(v);
  }
}

NeuronParams read_neuron(Reader& r, NeuronKind kind) {
  std::array<double, 5> v;
  for (double& x : v) x = r.f64();
  if (kind == NeuronKind::kCuba) return snn::CubaParams{v[0], v[1], v[2], v[3], v[4]};
  return snn::SdParams{v[0], v[3], v[4]};
}

}  // namespace

void save_checkpoint(std::ostream& out, const PolicyParams& params, std::uint32_t history_k) {
  params.validate();
  Writer w(out);
  w.bytes(kCheckpointMagic, sizeof(kCheckpointMagic));
  w.uint<std::uint32_t>(kCheckpointVersion);
  w.uint<std::uint8_t>(params.kind == NeuronKind::kCuba ? kTagCuba : kTagSd);
  w.uint<std::uint32_t>(history_k);
  for (std::size_t v : {params.shape.obs_rows, params.shape.sfe_width, params.shape.san_width,
                        params.shape.critic_width}) {
    w.uint<std::uint64_t>(v);
  }
  write_neuron(w, params.neurons.sfe);
  write_neuron(w, params.neurons.san);

  const auto tensors = params.named();
  w.uint<std::uint32_t>(static_cast<std::uint32_t>(tensors.size()));
  for (const auto& [name, t] : tensors) {
    w.uint<std::uint32_t>(static_cast<std::uint32_t>(name.size()));
    w.bytes(name.data(), name.size());
    w.uint<std::uint32_t>(static_cast<std::uint32_t>(t.dim()));
    for (std::size_t d : t.shape()) w.uint<std::uint64_t>(d);
    for (double v : t.data()) w.f64(v);
  }
  if (!out) throw CheckpointError("failed writing checkpoint");
}

void save_checkpoint(const std::filesystem::path& path, const PolicyParams& params, std::uint32_t history_k) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError("cannot open " + path.string() + " for writing");
  save_checkpoint(out, params, history_k);
}

LoadedCheckpoint load_checkpoint(std::istream& in) {
  Reader r(in);
  char magic[sizeof(kCheckpointMagic)];
  r.bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0) throw CheckpointError("not a spikenav checkpoint");
  const auto version = r.uint<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  }
  const auto tag = r.uint<std::uint8_t>();
  if (tag != kTagSd && tag != kTagCuba) throw CheckpointError("unknown neuron kind tag");

  LoadedCheckpoint ck;
  PolicyParams& p = ck.params;
  p.kind = tag == kTagCuba ? NeuronKind::kCuba : NeuronKind::kSigmaDelta;
  ck.history_k = r.uint<std::uint32_t>();
  p.shape.obs_rows = r.uint<std::uint64_t>();
  p.shape.sfe_width = r.uint<std::uint64_t>();
  p.shape.san_width = r.uint<std::uint64_t>();
  p.shape.critic_width = r.uint<std::uint64_t>();
  p.neurons.sfe = read_neuron(r, p.kind);
  p.neurons.san = read_neuron(r, p.kind);

  std::map<std::string, Tensor> loaded;
  const auto count = r.uint<std::uint32_t>();
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto name_len = r.uint<std::uint32_t>();
    if (name_len > kMaxName) throw CheckpointError("corrupt tensor name");
    std::string name(name_len, '\0');
    r.bytes(name.data(), name_len);
    const auto ndim = r.uint<std::uint32_t>();
    if (ndim > kMaxDims) throw CheckpointError("corrupt tensor rank for " + name);
    diff::Shape shape(ndim);
    std::size_t numel = 1;
    for (auto& d : shape) {
      d = r.uint<std::uint64_t>();
      if (d > (std::size_t{1} << 28)) throw CheckpointError("corrupt tensor extent for " + name);
      numel *= d;
    }
    std::vector<double> data(numel);
    for (double& v : data) v = r.f64();
    loaded[name] = Tensor(std::move(shape), std::move(data), true);
  }

  auto take = [&](const std::string& name) {
    auto it = loaded.find(name);
    if (it == loaded.end()) throw CheckpointError("checkpoint is missing tensor " + name);
    return it->second;
  };
  p.sfe_w = take("sfe.weight");
  p.sfe_b = take("sfe.bias");
  p.san_w = take("san.weight");
  p.san_b = take("san.bias");
  p.readout_w = take("readout.weight");
  p.readout_b = take("readout.bias");
  p.critic1_w = take("critic1.weight");
  p.critic1_b = take("critic1.bias");
  p.critic2_w = take("critic2.weight");
  p.critic2_b = take("critic2.bias");
  p.value_w = take("value.weight");
  p.value_b = take("value.bias");
  p.log_std = take("log_std");
  try {
    p.validate();
  } catch (const std::exception& e) {
    throw CheckpointError(std::string("inconsistent checkpoint: ") + e.what());
  }
  return ck;
}

LoadedCheckpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
  return load_checkpoint(in);
}

}  // namespace spikenav::policy
