#include "uavmec/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace uavmec {

namespace {

constexpr std::array<char, 8> kMagic{'U', 'A', 'V', 'M', 'E', 'C', 'N', 'N'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

void put_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), sizeof v); }
void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), sizeof v); }

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw CheckpointError("truncated checkpoint");
  return v;
}

double get_f64(std::istream& is) {
  double v = 0.0;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw CheckpointError("truncated checkpoint");
  return v;
}

std::uint32_t activation_code(Activation a) {
  switch (a) {
    case Activation::relu:
      return 0;
    case Activation::tanh:
      return 1;
    case Activation::linear:
      return 2;
  }
  return 2;
}

Activation activation_from(std::uint32_t code) {
  switch (code) {
    case 0:
      return Activation::relu;
    case 1:
      return Activation::tanh;
    case 2:
      return Activation::linear;
    default:
      throw CheckpointError("unknown activation code " + std::to_string(code));
  }
}

bool same_shape(const Mlp& a, const Mlp& b) {
  if (a.layers().size() != b.layers().size()) return false;
  for (std::size_t k = 0; k < a.layers().size(); ++k) {
    const auto& la = a.layers()[k];
    const auto& lb = b.layers()[k];
    if (la.weight.rows() != lb.weight.rows() || la.weight.cols() != lb.weight.cols() ||
        la.activation != lb.activation) {
      return false;
    }
  }
  return true;
}

}  // namespace

void save_networks(const std::filesystem::path& path, const std::vector<const Mlp*>& networks) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw CheckpointError("cannot open " + path.string() + " for writing");
  os.write(kMagic.data(), kMagic.size());
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(networks.size()));
  for (const Mlp* net : networks) {
    put_u32(os, static_cast<std::uint32_t>(net->layers().size()));
    for (const auto& layer : net->layers()) {
      put_u32(os, static_cast<std::uint32_t>(layer.weight.rows()));
      put_u32(os, static_cast<std::uint32_t>(layer.weight.cols()));
      put_u32(os, activation_code(layer.activation));
      for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
        for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) put_f64(os, layer.weight(r, c));
      }
      for (Eigen::Index r = 0; r < layer.bias.size(); ++r) put_f64(os, layer.bias(r));
    }
  }
  if (!os) throw CheckpointError("write failed for " + path.string());
}

std::vector<Mlp> load_networks(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CheckpointError("cannot open " + path.string());
  std::array<char, 8> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
    throw CheckpointError(path.string() + " is not a parameter file");
  }
  const std::uint32_t version = get_u32(is);
  if (version != kVersion) throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  const std::uint32_t count = get_u32(is);
  std::vector<Mlp> nets(count);
  for (auto& net : nets) {
    const std::uint32_t layers = get_u32(is);
    for (std::uint32_t k = 0; k < layers; ++k) {
      DenseLayer layer;
      const std::uint32_t rows = get_u32(is);
      const std::uint32_t cols = get_u32(is);
      layer.activation = activation_from(get_u32(is));
      if (rows == 0 || cols == 0) throw CheckpointError("empty layer in checkpoint");
      layer.weight.resize(rows, cols);
      layer.bias.resize(rows);
      for (std::uint32_t r = 0; r < rows; ++r) {
        for (std::uint32_t c = 0; c < cols; ++c) layer.weight(r, c) = get_f64(is);
      }
      for (std::uint32_t r = 0; r < rows; ++r) layer.bias(r) = get_f64(is);
      if (!net.layers().empty() && net.layers().back().weight.rows() != layer.weight.cols()) {
        throw CheckpointError("inconsistent layer sizes in checkpoint");
      }
      net.layers().push_back(std::move(layer));
    }
  }
  return nets;
}

void save_agent(const std::filesystem::path& path, const DdpgAgent& agent) {
  save_networks(path, {&agent.actor(), &agent.critic(), &agent.target_actor(), &agent.target_critic()});
}

void load_agent(const std::filesystem::path& path, DdpgAgent& agent) {
  std::vector<Mlp> nets = load_networks(path);
  if (nets.size() != 4) throw CheckpointError("agent checkpoint must hold 4 networks, found " + std::to_string(nets.size()));
  std::array<Mlp*, 4> dst{&agent.actor(), &agent.critic(), &agent.target_actor(), &agent.target_critic()};
  for (std::size_t k = 0; k < 4; ++k) {
    if (!same_shape(nets[k], *dst[k])) throw CheckpointError("checkpoint network shapes do not match the configuration");
  }
  for (std::size_t k = 0; k < 4; ++k) *dst[k] = std::move(nets[k]);
}

}  // namespace uavmec
