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

#include "rad/models.hpp"

namespace rad {

KnnClassifier::KnnClassifier(std::size_t k, std::size_t num_features, int num_classes)
    : k_(k), num_classes_(num_classes), columns_(num_features) {
  if (k_ < 1) throw ValidationError("knn: k must be >= 1");
}

std::unique_ptr<Classifier> KnnClassifier::clone() const {
  return std::make_unique<KnnClassifier>(*this);
}

void KnnClassifier::learn(std::span<const LabeledInstance> instances, Rng&) {
  for (auto& column : columns_) column.reserve(column.size() + instances.size());
  for (const auto& inst : instances) {
    if (inst.features.size() != columns_.size()) throw ValidationError("knn: feature width mismatch");
    for (std::size_t j = 0; j < columns_.size(); ++j) columns_[j].push_back(inst.features[j]);
    labels_.push_back(inst.given_label);
  }
}

std::vector<std::size_t> KnnClassifier::neighbours(std::span<const double> features) const {
  const std::size_t n = labels_.size();
  // Accumulate feature by feature so the inner loop runs over stored points;
  // each point's sum is still formed in feature order.
  std::vector<double> dist(n, 0.0);
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    const double q = features[j];
    const double* col = columns_[j].data();
    for (std::size_t i = 0; i < n; ++i) {
      const double d = q - col[i];
      dist[i] += d * d;
    }
  }

  const std::size_t k = std::min(k_, n);
  std::vector<std::size_t> best;  // sorted by (dist, index)
  best.reserve(k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (best.size() == k && dist[i] >= dist[best.back()]) continue;
    auto pos = std::upper_bound(best.begin(), best.end(), i, [&](std::size_t a, std::size_t b) {
      return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
    });
    best.insert(pos, i);
    if (best.size() > k) best.pop_back();
  }
  return best;
}

ClassLabel KnnClassifier::predict(std::span<const double> features) const {
  if (labels_.empty()) throw ValidationError("knn: predict before learn");
  std::vector<std::size_t> votes(static_cast<std::size_t>(num_classes_), 0);
  for (std::size_t i : neighbours(features)) ++votes[static_cast<std::size_t>(labels_[i])];
  return static_cast<ClassLabel>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

}  // namespace rad
