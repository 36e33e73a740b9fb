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

// Multi-class classifiers behind one train / predict surface. The same types
// serve as label quality model and as task classifier.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rad/core.hpp"

namespace rad {

enum class ClassifierKind { knn, centroid, mlp };

std::string_view to_string(ClassifierKind kind) noexcept;
ClassifierKind parse_classifier_kind(std::string_view name);

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::knn;
  std::size_t knn_k = 5;
  std::vector<std::size_t> mlp_hidden = {28, 28};
  std::size_t mlp_epochs = 50;
  double mlp_learning_rate = 0.01;
  std::size_t mlp_batch_size = 32;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Extension point: any trainable multi-class predictor.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual ClassLabel predict(std::span<const double> features) const = 0;
  virtual std::size_t num_features() const noexcept = 0;
  virtual std::unique_ptr<Classifier> clone() const = 0;

  /// Continues learning from the current parameters. A freshly constructed
  /// classifier followed by one `learn` call is a from-scratch fit.
  virtual void learn(std::span<const LabeledInstance> instances, Rng& rng) = 0;
};

/// Immutable handle to a trained classifier. Copies share the parameters;
/// prediction is safe from any number of threads.
class ClassifierModel {
 public:
  ClassifierModel() = default;
  ClassifierModel(ClassifierSpec spec, std::shared_ptr<const Classifier> impl,
                  std::size_t trained_on_count);

  bool trained() const noexcept { return impl_ != nullptr; }
  const ClassifierSpec& spec() const noexcept { return spec_; }
  std::size_t trained_on_count() const noexcept { return trained_on_count_; }
  const Classifier& impl() const;

  template <typename T>
  const T* as() const noexcept {
    return dynamic_cast<const T*>(impl_.get());
  }

  /// Throws ValidationError on a feature-width mismatch.
  ClassLabel predict(std::span<const double> features) const;
  std::vector<ClassLabel> predict_batch(std::span<const LabeledInstance> instances) const;

  /// A new model that continues training from these parameters.
  ClassifierModel warm_start(std::span<const LabeledInstance> instances, Rng& rng) const;

 private:
  ClassifierSpec spec_;
  std::shared_ptr<const Classifier> impl_;
  std::size_t trained_on_count_ = 0;
};

/// Untrained classifier of `spec.kind`; MLP weights are initialized from `rng`.
std::unique_ptr<Classifier> make_classifier(const ClassifierSpec& spec, std::size_t num_features,
                                            int num_classes, Rng& rng);

/// From-scratch fit. Throws TrainingError on an empty training set.
ClassifierModel train(const ClassifierSpec& spec, std::span<const LabeledInstance> instances,
                      int num_classes, Rng& rng);

/// Fraction of `test` whose prediction equals `true_label`.
double evaluate_accuracy(const ClassifierModel& model, std::span<const LabeledInstance> test);

/// k nearest neighbours, Euclidean distance. Neighbours are ranked by
/// (distance, insertion index); vote ties go to the lowest class index.
class KnnClassifier final : public Classifier {
 public:
  KnnClassifier(std::size_t k, std::size_t num_features, int num_classes);

  ClassLabel predict(std::span<const double> features) const override;
  std::size_t num_features() const noexcept override { return columns_.size(); }
  std::unique_ptr<Classifier> clone() const override;
  /// Appends to the stored set.
  void learn(std::span<const LabeledInstance> instances, Rng& rng) override;

  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return labels_.size(); }
  /// Indices of the min(k, size) nearest stored points, nearest first.
  std::vector<std::size_t> neighbours(std::span<const double> features) const;

 private:
  std::size_t k_;
  int num_classes_;
  std::vector<std::vector<double>> columns_;  // feature-major
  std::vector<ClassLabel> labels_;
};

/// Nearest class mean, Euclidean distance; ties go to the lowest class index.
class NearestCentroid final : public Classifier {
 public:
  NearestCentroid(std::size_t num_features, int num_classes);

  ClassLabel predict(std::span<const double> features) const override;
  std::size_t num_features() const noexcept override { return num_features_; }
  std::unique_ptr<Classifier> clone() const override;
  /// Accumulates per-class sums, so repeated calls average over everything seen.
  void learn(std::span<const LabeledInstance> instances, Rng& rng) override;

  /// Mean of class `c`; empty when the class was never seen.
  std::vector<double> mean(ClassLabel c) const;
  std::size_t count(ClassLabel c) const { return counts_.at(static_cast<std::size_t>(c)); }

 private:
  std::size_t num_features_;
  std::vector<std::vector<double>> sums_;
  std::vector<std::size_t> counts_;
  std::vector<std::vector<double>> means_;
};

/// Feed-forward network: ReLU hidden layers, softmax output of width K,
/// mini-batch SGD on mean cross-entropy.
class MlpClassifier final : public Classifier {
 public:
  struct Training {
    std::size_t epochs = 50;
    double learning_rate = 0.01;
    std::size_t batch_size = 32;
  };

  /// Uniform Xavier initialization, zero biases.
  MlpClassifier(std::size_t num_features, int num_classes, std::span<const std::size_t> hidden,
                Training training, Rng& rng);

  ClassLabel predict(std::span<const double> features) const override;
  std::size_t num_features() const noexcept override;
  std::unique_ptr<Classifier> clone() const override;
  /// `training.epochs` epochs of shuffled mini-batch SGD from the current weights.
  void learn(std::span<const LabeledInstance> instances, Rng& rng) override;

  Eigen::VectorXd probabilities(std::span<const double> features) const;

  /// Mean cross-entropy of `instances` against their given labels.
  double loss(std::span<const LabeledInstance> instances) const;
  /// Gradient of `loss`, laid out like `parameters()`.
  std::vector<double> gradient(std::span<const LabeledInstance> instances) const;

  /// Flattened weights then bias, layer by layer; weights column-major.
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> flat);
  std::size_t parameter_count() const noexcept;

 private:
  struct Layer {
    Eigen::MatrixXd weights;  // out x in
    Eigen::VectorXd bias;
  };

  void backprop(const Eigen::MatrixXd& inputs, std::span<const ClassLabel> labels,
                std::vector<Layer>& grads) const;
  Eigen::MatrixXd forward(const Eigen::MatrixXd& inputs) const;

  int num_classes_;
  Training training_;
  std::vector<Layer> layers_;
};

}  // namespace rad
