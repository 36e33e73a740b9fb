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

#include <limits>

#include "rad/models.hpp"

namespace rad {

NearestCentroid::NearestCentroid(std::size_t num_features, int num_classes)
    : num_features_(num_features),
      sums_(static_cast<std::size_t>(num_classes), std::vector<double>(num_features, 0.0)),
      counts_(static_cast<std::size_t>(num_classes), 0),
      means_(static_cast<std::size_t>(num_classes)) {}

std::unique_ptr<Classifier> NearestCentroid::clone() const {
  return std::make_unique<NearestCentroid>(*this);
}

void NearestCentroid::learn(std::span<const LabeledInstance> instances, Rng&) {
  for (const auto& inst : instances) {
    if (inst.features.size() != num_features_) throw ValidationError("centroid: feature width mismatch");
    const auto c = static_cast<std::size_t>(inst.given_label);
    for (std::size_t j = 0; j < num_features_; ++j) sums_.at(c)[j] += inst.features[j];
    ++counts_[c];
  }
  for (std::size_t c = 0; c < counts_.size(); ++c) {
    means_[c].clear();
    if (counts_[c] == 0) continue;
    means_[c].resize(num_features_);
    for (std::size_t j = 0; j < num_features_; ++j) {
      means_[c][j] = sums_[c][j] / static_cast<double>(counts_[c]);
    }
  }
}

std::vector<double> NearestCentroid::mean(ClassLabel c) const {
  return means_.at(static_cast<std::size_t>(c));
}

ClassLabel NearestCentroid::predict(std::span<const double> features) const {
  ClassLabel best = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < means_.size(); ++c) {
    if (means_[c].empty()) continue;
    double dist = 0.0;
    for (std::size_t j = 0; j < num_features_; ++j) {
      const double d = features[j] - means_[c][j];
      dist += d * d;
    }
    if (best < 0 || dist < best_dist) {
      best = static_cast<ClassLabel>(c);
      best_dist = dist;
    }
  }
  if (best < 0) throw ValidationError("centroid: predict before learn");
  return best;
}

}  // namespace rad
