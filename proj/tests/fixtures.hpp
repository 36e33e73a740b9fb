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

// Small hand-built models and streams shared by several test files.

#pragma once

#include <functional>
#include <memory>
#include <random>

#include "rad/frameworks.hpp"
#include "rad/noise.hpp"

namespace fixture {

// Predicts whatever `rule` says; learning is a no-op.
class ScriptedClassifier final : public rad::Classifier {
 public:
  using Rule = std::function<rad::ClassLabel(std::span<const double>)>;
  ScriptedClassifier(std::size_t f, Rule rule) : f_(f), rule_(std::move(rule)) {}
  rad::ClassLabel predict(std::span<const double> x) const override { return rule_(x); }
  std::size_t num_features() const noexcept override { return f_; }
  std::unique_ptr<rad::Classifier> clone() const override {
    return std::make_unique<ScriptedClassifier>(*this);
  }
  void learn(std::span<const rad::LabeledInstance>, rad::Rng&) override {}

 private:
  std::size_t f_;
  Rule rule_;
};

inline rad::ClassifierModel scripted(std::size_t f, ScriptedClassifier::Rule rule) {
  return rad::ClassifierModel(rad::ClassifierSpec{}, std::make_shared<ScriptedClassifier>(f, std::move(rule)), 0);
}

inline rad::ClassifierModel constant(std::size_t f, rad::ClassLabel c) {
  return scripted(f, [c](std::span<const double>) { return c; });
}

// Class c sits at c * spacing on every axis, unit noise.
inline std::vector<rad::LabeledInstance> blobs(std::size_t n, std::size_t f, int classes, double spacing,
                                               std::mt19937_64& gen, rad::InstanceId first_id = 0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<rad::LabeledInstance> out;
  for (std::size_t i = 0; i < n; ++i) {
    const rad::ClassLabel c = static_cast<rad::ClassLabel>(i % static_cast<std::size_t>(classes));
    std::vector<double> x(f);
    for (auto& v : x) v = spacing * c + normal(gen);
    out.push_back(rad::LabeledInstance::make_clean(first_id + i, std::move(x), c));
  }
  return out;
}

struct ToyStream {
  rad::Batch initial;
  std::vector<rad::Batch> arrivals;
};

inline ToyStream toy_stream(std::size_t initial, std::size_t n, std::size_t batches, int classes,
                            double spacing, double noise, std::uint64_t seed, std::size_t f = 2) {
  std::mt19937_64 gen(seed);
  rad::Rng noise_rng(seed + 1);
  ToyStream s;
  s.initial.index = 0;
  s.initial.instances = blobs(initial, f, classes, spacing, gen);
  rad::InstanceId next = initial;
  for (std::size_t b = 1; b <= batches; ++b) {
    rad::Batch batch;
    batch.index = b;
    batch.instances = blobs(n, f, classes, spacing, gen, next);
    std::shuffle(batch.instances.begin(), batch.instances.end(), gen);
    next += n;
    rad::inject_symmetric_noise_in_place(batch, noise, classes, noise_rng);
    s.arrivals.push_back(std::move(batch));
  }
  return s;
}

inline rad::ClassifierSpec centroid_spec() {
  rad::ClassifierSpec s;
  s.kind = rad::ClassifierKind::centroid;
  return s;
}

inline rad::ClassifierSpec knn_spec() { return rad::ClassifierSpec{}; }

}  // namespace fixture
