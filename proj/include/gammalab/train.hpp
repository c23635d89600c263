#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "gammalab/nn.hpp"
#include "gammalab/task.hpp"

namespace gammalab {

struct TrainConfig {
  std::uint64_t seed = 0;
  int epochs = 1000;
  double margin = 2.0;
  // 5e-3 keeps the same-class clusters tight within 1000 epochs; at 1e-2
  // the step size dominates the cluster radius on some seeds (the
  // non-squared norms keep gradient magnitudes constant near the optimum).
  double learning_rate = 5e-3;
  // <= 0 means "use margin / 2", which places the decision boundary midway
  // between the loss-enforced cluster radii.
  double prototype_threshold = 0.0;

  double threshold() const {
    return prototype_threshold > 0.0 ? prototype_threshold : margin / 2.0;
  }
  void validate() const;
};

// Six-term objective over the four canonical features (e0..e3 order):
//   (||f0-f1|| + ||f2-f3|| + sum of hinge(margin - ||fi-fj||) over the four
//    cross-class pairs) / 6
// Euclidean norms throughout.
double logic_loss(const std::array<Vec, 4>& features, double margin);

// d(loss)/d(f_i). The norm subgradient at coincident points is 0, and the
// hinge is treated as inactive at distance exactly equal to the margin.
std::array<Vec, 4> logic_loss_feature_gradients(const std::array<Vec, 4>& features,
                                                double margin);

struct TrainResult {
  Network encoder;
  double final_loss = 0.0;
};

// Stage 1: full-batch training of the 2->16->16->8 encoder on the four
// canonical inputs, minimizing logic_loss. Deterministic per seed.
TrainResult train_logic(const TrainConfig& cfg);

// Stage 2: nearest-prototype decision rule. prototype_a is the mean of the
// encoder outputs on the (class A) training split.
struct PrototypeClassifier {
  Network encoder;
  Vec prototype_a;
  double threshold = 1.0;
};

PrototypeClassifier build_prototype(Network encoder, double threshold);

// 1 (class B) iff the feature is farther than `threshold` from prototype_a.
int classify(const PrototypeClassifier& clf, const DomainElement& element);

// Supervised baseline: 2->16->16->2 softmax cross-entropy classifier
// trained only on the class-A split.
struct BaselineResult {
  Network classifier;
  double final_loss = 0.0;
};

BaselineResult train_baseline(const TrainConfig& cfg);
int baseline_predict(const Network& classifier, const DomainElement& element);

// Linear readout (8->2 logits) fitted on the class-A split on top of a
// frozen encoder; a head that only ever sees one class predicts it
// everywhere.
Network fit_linear_head(const Network& encoder, const TrainConfig& cfg);
int head_predict(const Network& encoder, const Network& head,
                 const DomainElement& element);

using Predictor = std::function<int(const DomainElement&)>;

// Fraction of elements whose prediction matches the ground-truth label.
double evaluate(const Predictor& predict, const std::vector<DomainElement>& elements);

// Pairwise Euclidean distances between encoder outputs on e0..e3.
using DistanceMatrix = std::array<std::array<double, 4>, 4>;
DistanceMatrix distance_matrix(const Network& encoder);

}  // namespace gammalab
