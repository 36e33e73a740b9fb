// Copyright 2026 The RAD Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rad/models.hpp"

namespace rad {
namespace {

// Column-wise numerically stable softmax, in place.
void softmax_columns(Eigen::MatrixXd& z) {
  for (Eigen::Index col = 0; col < z.cols(); ++col) {
    auto c = z.col(col);
    c.array() -= c.maxCoeff();
    c = c.array().exp();
    c /= c.sum();
  }
}

Eigen::MatrixXd pack_features(std::span<const LabeledInstance> instances, std::size_t f) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(instances.size()));
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (instances[i].features.size() != f) throw ValidationError("mlp: feature width mismatch");
    x.col(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::VectorXd>(instances[i].features.data(), static_cast<Eigen::Index>(f));
  }
  return x;
}

}  // namespace

MlpClassifier::MlpClassifier(std::size_t num_features, int num_classes,
                             std::span<const std::size_t> hidden, Training training, Rng& rng)
    : num_classes_(num_classes), training_(training) {
  if (num_features < 1) throw ValidationError("mlp: need at least one feature");
  std::vector<std::size_t> widths{num_features};
  widths.insert(widths.end(), hidden.begin(), hidden.end());
  widths.push_back(static_cast<std::size_t>(num_classes));
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const auto in = static_cast<Eigen::Index>(widths[l]);
    const auto out = static_cast<Eigen::Index>(widths[l + 1]);
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    std::uniform_real_distribution<double> init(-limit, limit);
    Layer layer{Eigen::MatrixXd(out, in), Eigen::VectorXd::Zero(out)};
    for (Eigen::Index c = 0; c < in; ++c) {
      for (Eigen::Index r = 0; r < out; ++r) layer.weights(r, c) = init(rng);
    }
    layers_.push_back(std::move(layer));
  }
}

std::size_t MlpClassifier::num_features() const noexcept {
  return static_cast<std::size_t>(layers_.front().weights.cols());
}

std::unique_ptr<Classifier> MlpClassifier::clone() const {
  return std::make_unique<MlpClassifier>(*this);
}

Eigen::MatrixXd MlpClassifier::forward(const Eigen::MatrixXd& inputs) const {
  Eigen::MatrixXd a = inputs;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Eigen::MatrixXd z = layers_[l].weights * a;
    z.colwise() += layers_[l].bias;
    if (l + 1 < layers_.size()) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  softmax_columns(a);
  return a;
}

Eigen::VectorXd MlpClassifier::probabilities(std::span<const double> features) const {
  Eigen::MatrixXd x =
      Eigen::Map<const Eigen::VectorXd>(features.data(), static_cast<Eigen::Index>(features.size()));
  return forward(x).col(0);
}

ClassLabel MlpClassifier::predict(std::span<const double> features) const {
  const Eigen::VectorXd p = probabilities(features);
  Eigen::Index best = 0;
  p.maxCoeff(&best);
  return static_cast<ClassLabel>(best);
}

void MlpClassifier::backprop(const Eigen::MatrixXd& inputs, std::span<const ClassLabel> labels,
                             std::vector<Layer>& grads) const {
  const std::size_t depth = layers_.size();
  const double scale = 1.0 / static_cast<double>(inputs.cols());

  // activations[0] is the input; activations[l + 1] is the output of layer l.
  std::vector<Eigen::MatrixXd> activations;
  activations.reserve(depth + 1);
  activations.push_back(inputs);
  for (std::size_t l = 0; l < depth; ++l) {
    Eigen::MatrixXd z = layers_[l].weights * activations.back();
    z.colwise() += layers_[l].bias;
    if (l + 1 < depth) z = z.cwiseMax(0.0);
    activations.push_back(std::move(z));
  }
  Eigen::MatrixXd delta = std::move(activations.back());
  softmax_columns(delta);
  for (Eigen::Index col = 0; col < delta.cols(); ++col) delta(labels[static_cast<std::size_t>(col)], col) -= 1.0;
  delta *= scale;

  grads.resize(depth);
  for (std::size_t l = depth; l-- > 0;) {
    const Eigen::MatrixXd& below = activations[l];
    grads[l].weights.noalias() = delta * below.transpose();
    grads[l].bias = delta.rowwise().sum();
    if (l == 0) break;
    Eigen::MatrixXd back = layers_[l].weights.transpose() * delta;
    // ReLU derivative, taken as 0 at the kink.
    delta = back.cwiseProduct((below.array() > 0.0).cast<double>().matrix());
  }
}

void MlpClassifier::learn(std::span<const LabeledInstance> instances, Rng& rng) {
  if (instances.empty()) throw TrainingError("mlp: empty training set");
  const std::size_t f = num_features();
  const Eigen::MatrixXd x = pack_features(instances, f);
  std::vector<ClassLabel> labels(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    labels[i] = instances[i].given_label;
    if (labels[i] < 0 || labels[i] >= num_classes_) throw ValidationError("mlp: label out of range");
  }

  const std::size_t n = instances.size();
  const std::size_t batch = std::min(training_.batch_size, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<Layer> grads;
  Eigen::MatrixXd xb;
  std::vector<ClassLabel> yb;
  for (std::size_t epoch = 0; epoch < training_.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(start + batch, n);
      xb.resize(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(end - start));
      yb.resize(end - start);
      for (std::size_t i = start; i < end; ++i) {
        xb.col(static_cast<Eigen::Index>(i - start)) = x.col(static_cast<Eigen::Index>(order[i]));
        yb[i - start] = labels[order[i]];
      }
      backprop(xb, yb, grads);
      for (std::size_t l = 0; l < layers_.size(); ++l) {
        layers_[l].weights.noalias() -= training_.learning_rate * grads[l].weights;
        layers_[l].bias.noalias() -= training_.learning_rate * grads[l].bias;
      }
    }
  }
}

double MlpClassifier::loss(std::span<const LabeledInstance> instances) const {
  if (instances.empty()) throw ValidationError("mlp: loss of an empty set");
  const Eigen::MatrixXd p = forward(pack_features(instances, num_features()));
  double total = 0.0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    total -= std::log(p(instances[i].given_label, static_cast<Eigen::Index>(i)));
  }
  return total / static_cast<double>(instances.size());
}

std::vector<double> MlpClassifier::gradient(std::span<const LabeledInstance> instances) const {
  if (instances.empty()) throw ValidationError("mlp: gradient of an empty set");
  std::vector<ClassLabel> labels;
  for (const auto& inst : instances) labels.push_back(inst.given_label);
  std::vector<Layer> grads;
  backprop(pack_features(instances, num_features()), labels, grads);
  std::vector<double> flat;
  flat.reserve(parameter_count());
  for (const auto& g : grads) {
    flat.insert(flat.end(), g.weights.data(), g.weights.data() + g.weights.size());
    flat.insert(flat.end(), g.bias.data(), g.bias.data() + g.bias.size());
  }
  return flat;
}

std::vector<double> MlpClassifier::parameters() const {
  std::vector<double> flat;
  flat.reserve(parameter_count());
  for (const auto& layer : layers_) {
    flat.insert(flat.end(), layer.weights.data(), layer.weights.data() + layer.weights.size());
    flat.insert(flat.end(), layer.bias.data(), layer.bias.data() + layer.bias.size());
  }
  return flat;
}

void MlpClassifier::set_parameters(std::span<const double> flat) {
  if (flat.size() != parameter_count()) throw ValidationError("mlp: parameter count mismatch");
  const double* p = flat.data();
  for (auto& layer : layers_) {
    std::copy_n(p, layer.weights.size(), layer.weights.data());
    p += layer.weights.size();
    std::copy_n(p, layer.bias.size(), layer.bias.data());
    p += layer.bias.size();
  }
}

std::size_t MlpClassifier::parameter_count() const noexcept {
  std::size_t total = 0;
  for (const auto& layer : layers_) total += static_cast<std::size_t>(layer.weights.size() + layer.bias.size());
  return total;
}

}  // namespace rad
