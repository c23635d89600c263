#include "gammalab/train.hpp"

#include <cmath>
#include <utility>

#include "gammalab/errors.hpp"

namespace gammalab {

namespace {

constexpr std::array<std::pair<int, int>, 4> kCrossPairs = {
    {{0, 2}, {0, 3}, {1, 2}, {1, 3}}};

std::array<Vec, 4> domain_features(const Network& encoder) {
  std::array<Vec, 4> f;
  for (const DomainElement& e : full_domain())
    f[e.id] = forward(encoder, input_vector(e)).output;
  return f;
}

Vec softmax(const Vec& logits) {
  double mx = logits[0];
  for (double v : logits) mx = std::max(mx, v);
  Vec p(logits.size());
  double denom = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - mx);
    denom += p[i];
  }
  for (double& v : p) v /= denom;
  return p;
}

// Mean softmax cross-entropy step over `samples`, each sample being an
// (input, target class) pair fed through `net`. Returns the loss.
double cross_entropy_epoch(Network& net, AdamState& opt,
                           const std::vector<std::pair<Vec, int>>& samples) {
  Gradients grads = zero_gradients(net);
  double loss = 0.0;
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  for (const auto& [input, target] : samples) {
    const ForwardTrace trace = forward(net, input);
    const Vec p = softmax(trace.output);
    loss += -std::log(std::max(p[target], 1e-300)) * inv_n;
    Vec gout(p.size());
    for (std::size_t k = 0; k < p.size(); ++k)
      gout[k] = (p[k] - (static_cast<int>(k) == target ? 1.0 : 0.0)) * inv_n;
    accumulate(grads, backward(net, trace, gout));
  }
  adam_step(opt, net, grads);
  return loss;
}

int argmax2(const Vec& logits) { return logits[1] > logits[0] ? 1 : 0; }

}  // namespace

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (margin <= 0.0) throw ConfigError("margin must be positive");
  if (learning_rate <= 0.0) throw ConfigError("learning rate must be positive");
  if (threshold() <= 0.0) throw ConfigError("prototype threshold must be positive");
}

double logic_loss(const std::array<Vec, 4>& features, double margin) {
  const std::size_t dim = features[0].size();
  for (const Vec& f : features) {
    if (f.size() != dim || dim == 0)
      throw ShapeError("logic_loss: feature dimensions disagree");
    if (!all_finite(f)) throw TrainingError("logic_loss: non-finite feature");
  }
  double total = distance(features[0], features[1]) + distance(features[2], features[3]);
  for (const auto& [i, j] : kCrossPairs)
    total += std::max(0.0, margin - distance(features[i], features[j]));
  return total / 6.0;
}

std::array<Vec, 4> logic_loss_feature_gradients(const std::array<Vec, 4>& features,
                                                double margin) {
  const std::size_t dim = features[0].size();
  std::array<Vec, 4> grads;
  for (Vec& g : grads) g.assign(dim, 0.0);

  // Adds coef * unit(f_i - f_j) to grad_i and the negation to grad_j.
  const auto add_pair = [&](int i, int j, double coef) {
    const double d = distance(features[i], features[j]);
    if (d == 0.0) return;  // subgradient 0 at coincident points
    for (std::size_t k = 0; k < dim; ++k) {
      const double u = (features[i][k] - features[j][k]) / d;
      grads[i][k] += coef * u;
      grads[j][k] -= coef * u;
    }
  };

  add_pair(0, 1, 1.0 / 6.0);
  add_pair(2, 3, 1.0 / 6.0);
  for (const auto& [i, j] : kCrossPairs)
    if (distance(features[i], features[j]) < margin) add_pair(i, j, -1.0 / 6.0);
  return grads;
}

TrainResult train_logic(const TrainConfig& cfg) {
  cfg.validate();
  Network net = init_network(cfg.seed, {2, 16, 16, 8},
                             {Activation::RectifiedLinear,
                              Activation::RectifiedLinear, Activation::Identity});
  AdamState opt = AdamState::for_network(net, cfg.learning_rate);
  const auto& domain = full_domain();

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::array<ForwardTrace, 4> traces;
    std::array<Vec, 4> feats;
    for (const DomainElement& e : domain) {
      traces[e.id] = forward(net, input_vector(e));
      feats[e.id] = traces[e.id].output;
    }
    const double loss = logic_loss(feats, cfg.margin);
    if (!std::isfinite(loss))
      throw TrainingError("logic training diverged at epoch " + std::to_string(epoch));
    const std::array<Vec, 4> fg = logic_loss_feature_gradients(feats, cfg.margin);
    Gradients grads = zero_gradients(net);
    for (int i = 0; i < 4; ++i) accumulate(grads, backward(net, traces[i], fg[i]));
    adam_step(opt, net, grads);
  }

  const double final_loss = logic_loss(domain_features(net), cfg.margin);
  return {std::move(net), final_loss};
}

PrototypeClassifier build_prototype(Network encoder, double threshold) {
  if (threshold <= 0.0) throw ConfigError("prototype threshold must be positive");
  const Split s = split();
  const Vec f0 = forward(encoder, input_vector(s.train[0])).output;
  const Vec f1 = forward(encoder, input_vector(s.train[1])).output;
  return {std::move(encoder), vec_mean(f0, f1), threshold};
}

int classify(const PrototypeClassifier& clf, const DomainElement& element) {
  const Vec f = forward(clf.encoder, input_vector(element)).output;
  return distance(f, clf.prototype_a) > clf.threshold ? 1 : 0;
}

BaselineResult train_baseline(const TrainConfig& cfg) {
  cfg.validate();
  Network net = init_network(cfg.seed, {2, 16, 16, 2},
                             {Activation::RectifiedLinear,
                              Activation::RectifiedLinear, Activation::Identity});
  AdamState opt = AdamState::for_network(net, cfg.learning_rate);

  std::vector<std::pair<Vec, int>> samples;
  for (const DomainElement& e : split().train)
    samples.emplace_back(input_vector(e), e.class_label);

  double loss = 0.0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    loss = cross_entropy_epoch(net, opt, samples);
    if (!std::isfinite(loss))
      throw TrainingError("baseline training diverged at epoch " + std::to_string(epoch));
  }
  return {std::move(net), loss};
}

int baseline_predict(const Network& classifier, const DomainElement& element) {
  return argmax2(forward(classifier, input_vector(element)).output);
}

Network fit_linear_head(const Network& encoder, const TrainConfig& cfg) {
  cfg.validate();
  Network head = init_network(cfg.seed, {encoder.output_dim(), 2}, {Activation::Identity});
  AdamState opt = AdamState::for_network(head, cfg.learning_rate);

  std::vector<std::pair<Vec, int>> samples;
  for (const DomainElement& e : split().train)
    samples.emplace_back(forward(encoder, input_vector(e)).output, e.class_label);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double loss = cross_entropy_epoch(head, opt, samples);
    if (!std::isfinite(loss))
      throw TrainingError("head training diverged at epoch " + std::to_string(epoch));
  }
  return head;
}

int head_predict(const Network& encoder, const Network& head,
                 const DomainElement& element) {
  const Vec f = forward(encoder, input_vector(element)).output;
  return argmax2(forward(head, f).output);
}

double evaluate(const Predictor& predict, const std::vector<DomainElement>& elements) {
  if (elements.empty()) throw UsageError("evaluate: empty element list");
  int correct = 0;
  for (const DomainElement& e : elements)
    if (predict(e) == e.class_label) ++correct;
  return static_cast<double>(correct) / static_cast<double>(elements.size());
}

DistanceMatrix distance_matrix(const Network& encoder) {
  const std::array<Vec, 4> f = domain_features(encoder);
  DistanceMatrix d{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d[i][j] = distance(f[i], f[j]);
  return d;
}

}  // namespace gammalab
