#include "gammalab/nn.hpp"

#include <cmath>
#include <fstream>

#include "gammalab/errors.hpp"
#include "gammalab/rng.hpp"

namespace gammalab {

namespace {

double activate(Activation a, double z) {
  switch (a) {
    case Activation::RectifiedLinear: return z > 0.0 ? z : 0.0;
    case Activation::Identity: return z;
  }
  throw ConfigError("unknown activation");
}

// Rectified-linear subgradient at 0 is 0.
double activate_derivative(Activation a, double z) {
  switch (a) {
    case Activation::RectifiedLinear: return z > 0.0 ? 1.0 : 0.0;
    case Activation::Identity: return 1.0;
  }
  throw ConfigError("unknown activation");
}

}  // namespace

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::RectifiedLinear: return "relu";
    case Activation::Identity: return "identity";
  }
  throw ConfigError("unknown activation");
}

Activation activation_from_name(const std::string& name) {
  if (name == "relu") return Activation::RectifiedLinear;
  if (name == "identity") return Activation::Identity;
  throw ParseError("unknown activation name: " + name);
}

void validate_network(const Network& net) {
  if (net.layers.empty()) throw ConfigError("network has no layers");
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const DenseLayer& layer = net.layers[l];
    if (layer.out_dim() == 0 || layer.in_dim() == 0)
      throw ConfigError("layer " + std::to_string(l) + " has a zero dimension");
    if (layer.biases.size() != layer.out_dim())
      throw ShapeError("layer " + std::to_string(l) + " bias size mismatch");
    if (l > 0 && net.layers[l - 1].out_dim() != layer.in_dim())
      throw ShapeError("layer dims do not chain at layer " + std::to_string(l));
    for (double w : layer.weights.data)
      if (!std::isfinite(w))
        throw ConfigError("non-finite weight in layer " + std::to_string(l));
    if (!all_finite(layer.biases))
      throw ConfigError("non-finite bias in layer " + std::to_string(l));
  }
}

Gradients zero_gradients(const Network& net) {
  Gradients g;
  g.reserve(net.layers.size());
  for (const DenseLayer& layer : net.layers) {
    LayerGrads lg;
    lg.weights = Matrix(layer.out_dim(), layer.in_dim());
    lg.biases.assign(layer.out_dim(), 0.0);
    g.push_back(std::move(lg));
  }
  return g;
}

void accumulate(Gradients& into, const Gradients& other) {
  if (into.size() != other.size()) throw ShapeError("gradient layer count mismatch");
  for (std::size_t l = 0; l < into.size(); ++l) {
    if (!into[l].weights.same_shape(other[l].weights) ||
        into[l].biases.size() != other[l].biases.size())
      throw ShapeError("gradient shape mismatch at layer " + std::to_string(l));
    for (std::size_t k = 0; k < into[l].weights.data.size(); ++k)
      into[l].weights.data[k] += other[l].weights.data[k];
    for (std::size_t k = 0; k < into[l].biases.size(); ++k)
      into[l].biases[k] += other[l].biases[k];
  }
}

Network init_network(std::uint64_t seed, const std::vector<std::size_t>& dims,
                     const std::vector<Activation>& activations) {
  if (dims.size() < 2)
    throw ConfigError("init_network: need at least an input and an output dim");
  if (activations.size() != dims.size() - 1)
    throw ConfigError("init_network: one activation per layer required");
  for (std::size_t d : dims)
    if (d == 0) throw ConfigError("init_network: layer widths must be >= 1");

  SplitMix64 rng(seed);
  Network net;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    DenseLayer layer;
    layer.activation = activations[l];
    layer.weights = Matrix(dims[l + 1], dims[l]);
    const double bound = 1.0 / std::sqrt(static_cast<double>(dims[l]));
    for (double& w : layer.weights.data) w = rng.next_uniform(-bound, bound);
    layer.biases.assign(dims[l + 1], 0.0);
    net.layers.push_back(std::move(layer));
  }
  return net;
}

ForwardTrace forward(const Network& net, const Vec& input) {
  if (net.layers.empty()) throw ConfigError("forward: empty network");
  if (input.size() != net.input_dim())
    throw ShapeError("forward: input size " + std::to_string(input.size()) +
                     " does not match first layer in_dim " +
                     std::to_string(net.input_dim()));

  ForwardTrace trace;
  trace.inputs.reserve(net.layers.size());
  trace.pre_activations.reserve(net.layers.size());
  Vec x = input;
  for (const DenseLayer& layer : net.layers) {
    trace.inputs.push_back(x);
    Vec z = matvec(layer.weights, x);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += layer.biases[i];
    trace.pre_activations.push_back(z);
    Vec a(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) a[i] = activate(layer.activation, z[i]);
    x = std::move(a);
  }
  trace.output = std::move(x);
  return trace;
}

Gradients backward(const Network& net, const ForwardTrace& trace,
                   const Vec& output_gradient) {
  const std::size_t depth = net.layers.size();
  if (trace.inputs.size() != depth || trace.pre_activations.size() != depth)
    throw ShapeError("backward: trace depth does not match network");
  if (output_gradient.size() != net.output_dim())
    throw ShapeError("backward: output gradient size mismatch");

  Gradients grads = zero_gradients(net);
  Vec da = output_gradient;
  for (std::size_t l = depth; l-- > 0;) {
    const DenseLayer& layer = net.layers[l];
    const Vec& z = trace.pre_activations[l];
    const Vec& x = trace.inputs[l];
    if (z.size() != layer.out_dim() || x.size() != layer.in_dim())
      throw ShapeError("backward: stale trace at layer " + std::to_string(l));

    Vec dz(layer.out_dim());
    for (std::size_t i = 0; i < dz.size(); ++i)
      dz[i] = da[i] * activate_derivative(layer.activation, z[i]);

    for (std::size_t i = 0; i < layer.out_dim(); ++i)
      for (std::size_t j = 0; j < layer.in_dim(); ++j)
        grads[l].weights(i, j) = dz[i] * x[j];
    grads[l].biases = dz;

    if (l > 0) da = matvec_transposed(layer.weights, dz);
  }
  return grads;
}

AdamState AdamState::for_network(const Network& net, double learning_rate) {
  AdamState s;
  s.learning_rate = learning_rate;
  s.first_moment = zero_gradients(net);
  s.second_moment = zero_gradients(net);
  return s;
}

namespace {

void adam_update(double& param, double& m, double& v, double g,
                 const AdamState& s, double bc1, double bc2,
                 const char* what, std::size_t layer, std::size_t index) {
  if (!std::isfinite(g))
    throw TrainingError("non-finite gradient at layer " + std::to_string(layer) +
                        " " + what + "[" + std::to_string(index) + "]");
  m = s.beta1 * m + (1.0 - s.beta1) * g;
  v = s.beta2 * v + (1.0 - s.beta2) * g * g;
  param -= s.learning_rate * (m / bc1) / (std::sqrt(v / bc2) + s.epsilon);
}

}  // namespace

void adam_step(AdamState& state, Network& net, const Gradients& grads) {
  if (grads.size() != net.layers.size())
    throw ShapeError("adam_step: gradient layer count mismatch");
  state.step_count += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step_count));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step_count));
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    DenseLayer& layer = net.layers[l];
    if (!grads[l].weights.same_shape(layer.weights) ||
        grads[l].biases.size() != layer.biases.size())
      throw ShapeError("adam_step: gradient shape mismatch at layer " + std::to_string(l));
    for (std::size_t k = 0; k < layer.weights.data.size(); ++k)
      adam_update(layer.weights.data[k], state.first_moment[l].weights.data[k],
                  state.second_moment[l].weights.data[k], grads[l].weights.data[k],
                  state, bc1, bc2, "weights", l, k);
    for (std::size_t k = 0; k < layer.biases.size(); ++k)
      adam_update(layer.biases[k], state.first_moment[l].biases[k],
                  state.second_moment[l].biases[k], grads[l].biases[k],
                  state, bc1, bc2, "biases", l, k);
  }
}

Gradients finite_difference_gradients(const Network& net, const Vec& input,
                                      const Vec& output_gradient, double step) {
  const auto loss = [&](const Network& n) {
    const Vec out = forward(n, input).output;
    double s = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) s += output_gradient[i] * out[i];
    return s;
  };

  Network work = net;
  Gradients g = zero_gradients(net);
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    for (std::size_t k = 0; k < work.layers[l].weights.data.size(); ++k) {
      double& p = work.layers[l].weights.data[k];
      const double orig = p;
      p = orig + step;
      const double hi = loss(work);
      p = orig - step;
      const double lo = loss(work);
      p = orig;
      g[l].weights.data[k] = (hi - lo) / (2.0 * step);
    }
    for (std::size_t k = 0; k < work.layers[l].biases.size(); ++k) {
      double& p = work.layers[l].biases[k];
      const double orig = p;
      p = orig + step;
      const double hi = loss(work);
      p = orig - step;
      const double lo = loss(work);
      p = orig;
      g[l].biases[k] = (hi - lo) / (2.0 * step);
    }
  }
  return g;
}

nlohmann::json network_to_json(const Network& net) {
  nlohmann::json layers = nlohmann::json::array();
  for (const DenseLayer& layer : net.layers) {
    layers.push_back({{"in_dim", layer.in_dim()},
                      {"out_dim", layer.out_dim()},
                      {"activation", activation_name(layer.activation)},
                      {"weights", layer.weights.data},
                      {"biases", layer.biases}});
  }
  return {{"schema_version", 1}, {"kind", "network"}, {"layers", layers}};
}

Network network_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema_version").get<int>() != 1)
      throw ParseError("unsupported network schema_version");
    if (j.at("kind").get<std::string>() != "network")
      throw ParseError("document is not a network");
    Network net;
    for (const auto& lj : j.at("layers")) {
      DenseLayer layer;
      const auto out_dim = lj.at("out_dim").get<std::size_t>();
      const auto in_dim = lj.at("in_dim").get<std::size_t>();
      layer.activation = activation_from_name(lj.at("activation").get<std::string>());
      layer.weights = Matrix(out_dim, in_dim);
      const auto w = lj.at("weights").get<std::vector<double>>();
      if (w.size() != out_dim * in_dim)
        throw ParseError("weight array size does not match layer dims");
      layer.weights.data = w;
      layer.biases = lj.at("biases").get<std::vector<double>>();
      net.layers.push_back(std::move(layer));
    }
    validate_network(net);
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed network document: ") + e.what());
  } catch (const Error&) {
    throw;
  }
}

void save_network(const Network& net, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << network_to_json(net).dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return network_from_json(j);
}

}  // namespace gammalab
