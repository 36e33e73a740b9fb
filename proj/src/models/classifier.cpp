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

#include <string>

#include "rad/models.hpp"

namespace rad {

std::string_view to_string(ClassifierKind kind) noexcept {
  switch (kind) {
    case ClassifierKind::knn: return "knn";
    case ClassifierKind::centroid: return "centroid";
    case ClassifierKind::mlp: return "mlp";
  }
  return "?";
}

ClassifierKind parse_classifier_kind(std::string_view name) {
  if (name == "knn") return ClassifierKind::knn;
  if (name == "centroid") return ClassifierKind::centroid;
  if (name == "mlp") return ClassifierKind::mlp;
  throw ValidationError("unknown classifier kind '" + std::string(name) + "'");
}

void ClassifierSpec::validate() const {
  if (knn_k < 1) throw ValidationError("knn_k must be >= 1");
  for (auto width : mlp_hidden) {
    if (width < 1) throw ValidationError("every mlp hidden width must be >= 1");
  }
  if (mlp_epochs < 1) throw ValidationError("mlp_epochs must be >= 1");
  if (!(mlp_learning_rate > 0.0)) throw ValidationError("mlp_learning_rate must be > 0");
  if (mlp_batch_size < 1) throw ValidationError("mlp_batch_size must be >= 1");
}

ClassifierModel::ClassifierModel(ClassifierSpec spec, std::shared_ptr<const Classifier> impl,
                                 std::size_t trained_on_count)
    : spec_(std::move(spec)), impl_(std::move(impl)), trained_on_count_(trained_on_count) {}

const Classifier& ClassifierModel::impl() const {
  if (!impl_) throw ValidationError("classifier used before training");
  return *impl_;
}

ClassLabel ClassifierModel::predict(std::span<const double> features) const {
  const auto& model = impl();
  if (features.size() != model.num_features()) {
    throw ValidationError("predict: expected " + std::to_string(model.num_features()) +
                          " features, got " + std::to_string(features.size()));
  }
  return model.predict(features);
}

std::vector<ClassLabel> ClassifierModel::predict_batch(std::span<const LabeledInstance> instances) const {
  std::vector<ClassLabel> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) out.push_back(predict(inst.features));
  return out;
}

ClassifierModel ClassifierModel::warm_start(std::span<const LabeledInstance> instances, Rng& rng) const {
  if (instances.empty()) throw TrainingError("warm start on an empty training set");
  auto next = impl().clone();
  next->learn(instances, rng);
  return ClassifierModel(spec_, std::shared_ptr<const Classifier>(std::move(next)),
                         trained_on_count_ + instances.size());
}

std::unique_ptr<Classifier> make_classifier(const ClassifierSpec& spec, std::size_t num_features,
                                            int num_classes, Rng& rng) {
  spec.validate();
  if (num_classes < 2) throw ValidationError("classifier needs at least 2 classes");
  switch (spec.kind) {
    case ClassifierKind::knn:
      return std::make_unique<KnnClassifier>(spec.knn_k, num_features, num_classes);
    case ClassifierKind::centroid:
      return std::make_unique<NearestCentroid>(num_features, num_classes);
    case ClassifierKind::mlp:
      return std::make_unique<MlpClassifier>(
          num_features, num_classes, spec.mlp_hidden,
          MlpClassifier::Training{spec.mlp_epochs, spec.mlp_learning_rate, spec.mlp_batch_size}, rng);
  }
  throw ValidationError("unknown classifier kind");
}

ClassifierModel train(const ClassifierSpec& spec, std::span<const LabeledInstance> instances,
                      int num_classes, Rng& rng) {
  if (instances.empty()) throw TrainingError("cannot train on an empty training set");
  const std::size_t f = instances.front().features.size();
  for (const auto& inst : instances) validate_instance(inst, num_classes, f);
  auto model = make_classifier(spec, f, num_classes, rng);
  model->learn(instances, rng);
  return ClassifierModel(spec, std::shared_ptr<const Classifier>(std::move(model)), instances.size());
}

double evaluate_accuracy(const ClassifierModel& model, std::span<const LabeledInstance> test) {
  if (test.empty()) throw ValidationError("evaluate_accuracy on an empty test set");
  std::size_t correct = 0;
  for (const auto& inst : test) {
    if (model.predict(inst.features) == inst.true_label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace rad
