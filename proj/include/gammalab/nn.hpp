#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gammalab/linalg.hpp"

#include "json.hpp"

namespace gammalab {

enum class Activation { RectifiedLinear, Identity };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

struct DenseLayer {
  Matrix weights;  // out_dim x in_dim
  Vec biases;      // out_dim
  Activation activation = Activation::Identity;

  std::size_t in_dim() const { return weights.cols; }
  std::size_t out_dim() const { return weights.rows; }
};

struct Network {
  std::vector<DenseLayer> layers;

  std::size_t input_dim() const { return layers.front().in_dim(); }
  std::size_t output_dim() const { return layers.back().out_dim(); }
};

// Checks layer dimension chaining and parameter finiteness.
void validate_network(const Network& net);

// Everything needed to run backward: the input seen by each layer and the
// pre-activation values z = Wx + b.
struct ForwardTrace {
  std::vector<Vec> inputs;
  std::vector<Vec> pre_activations;
  Vec output;
};

struct LayerGrads {
  Matrix weights;
  Vec biases;
};
using Gradients = std::vector<LayerGrads>;

Gradients zero_gradients(const Network& net);
void accumulate(Gradients& into, const Gradients& other);

// Weights drawn from U(-1/sqrt(in_dim), +1/sqrt(in_dim)), biases zero.
// Deterministic for a given seed (SplitMix64 stream, layer by layer,
// row-major within each weight matrix).
Network init_network(std::uint64_t seed, const std::vector<std::size_t>& dims,
                     const std::vector<Activation>& activations);

ForwardTrace forward(const Network& net, const Vec& input);

// Exact reverse-mode gradients. The rectified-linear subgradient at
// exactly 0 is taken as 0; this choice affects bit-level reproducibility
// and is relied on by the serialization round-trip tests.
Gradients backward(const Network& net, const ForwardTrace& trace,
                   const Vec& output_gradient);

// Adaptive-moment optimizer state (bias-corrected first and second
// moments). beta1/beta2 follow the usual 0.9/0.999 defaults.
struct AdamState {
  double learning_rate = 1e-2;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  long step_count = 0;
  Gradients first_moment;
  Gradients second_moment;

  static AdamState for_network(const Network& net, double learning_rate = 1e-2);
};

void adam_step(AdamState& state, Network& net, const Gradients& grads);

// Central finite differences of the scalar loss <output_gradient, f(x)>
// with respect to every parameter. Uses only forward(), so it serves as an
// oracle independent of backward().
Gradients finite_difference_gradients(const Network& net, const Vec& input,
                                      const Vec& output_gradient, double step);

// Versioned JSON document: layer dims, activation names, row-major
// parameter arrays.
nlohmann::json network_to_json(const Network& net);
Network network_from_json(const nlohmann::json& j);
void save_network(const Network& net, const std::filesystem::path& path);
Network load_network(const std::filesystem::path& path);

}  // namespace gammalab
