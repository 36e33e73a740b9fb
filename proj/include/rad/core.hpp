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

// Domain types shared by every module, dataset I/O, synthetic stream
// generation and the initial / arrivals / test partition.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <vector>

#include "rad/error.hpp"

namespace rad {

using ClassLabel = std::int32_t;
using InstanceId = std::uint64_t;
using Rng = std::mt19937_64;

/// Mixes `base` with a stream tag and index into an independent 64-bit seed
/// (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, std::uint64_t index = 0) noexcept;

/// One labeled record. `true_label` and `is_clean` are ground truth: only the
/// noise injector, the oracle, the omniscient baselines and the metrics read
/// them.
struct LabeledInstance {
  InstanceId id = 0;
  std::vector<double> features;
  ClassLabel given_label = 0;
  ClassLabel true_label = 0;
  bool is_clean = true;

  static LabeledInstance make_clean(InstanceId id, std::vector<double> features, ClassLabel label) {
    return LabeledInstance{id, std::move(features), label, label, true};
  }

  /// The only sanctioned way to change `given_label`; keeps `is_clean` in sync.
  void relabel(ClassLabel label) noexcept {
    given_label = label;
    is_clean = given_label == true_label;
  }
};

struct Dataset {
  int num_classes = 0;
  std::size_t num_features = 0;
  std::vector<LabeledInstance> instances;

  std::size_t size() const noexcept { return instances.size(); }
};

/// The instances arriving at one time step. Index 0 is the initial batch.
struct Batch {
  std::size_t index = 0;
  std::vector<LabeledInstance> instances;
  double drawn_noise_level = 0.0;

  std::size_t size() const noexcept { return instances.size(); }
};

struct StreamConfig {
  int num_classes = 4;
  std::size_t num_features = 20;
  std::size_t initial_batch_size = 1000;
  std::size_t batch_size = 300;
  std::size_t num_batches = 20;
  std::size_t test_size = 2000;
  std::uint64_t seed = 1;
  /// Per-class stratified partitioning instead of a plain uniform shuffle.
  bool stratified = false;

  void validate() const;
  std::size_t required_instances() const noexcept {
    return initial_batch_size + num_batches * batch_size + test_size;
  }
};

struct StreamSplit {
  Batch initial;
  std::vector<Batch> arrivals;
  std::vector<LabeledInstance> test;
};

/// Reads `f0,...,f{n-1},label`. Every row becomes a clean instance whose id is
/// its 0-based data-row index.
Dataset load_csv(const std::filesystem::path& path, int num_classes);

/// Writes the given labels in the same format `load_csv` reads.
void write_csv(const Dataset& dataset, const std::filesystem::path& path);

/// K unit-variance Gaussian clusters with means at pairwise distance
/// >= `separation`. Instance count defaults to `config.required_instances()`.
Dataset generate_synthetic(const StreamConfig& config, double separation);
Dataset generate_synthetic(const StreamConfig& config, double separation, std::size_t count);

/// Class means used by `generate_synthetic`, one row per class: separation * e_k
/// when K <= f, otherwise an integer lattice scaled by `separation`.
std::vector<std::vector<double>> synthetic_class_means(int num_classes, std::size_t num_features,
                                                       double separation);

StreamSplit split_stream(const Dataset& dataset, const StreamConfig& config, Rng& rng);

/// Checks label range, clean flag consistency and feature width.
void validate_instance(const LabeledInstance& instance, int num_classes, std::size_t num_features);

/// Per-feature min-max scaling to [0, 1]. Constant features map to 0.
class MinMaxScaler {
 public:
  void fit(std::span<const LabeledInstance> instances);
  void transform(LabeledInstance& instance) const;
  void transform(std::span<LabeledInstance> instances) const;
  void transform(StreamSplit& split) const;

  const std::vector<double>& minimum() const noexcept { return min_; }
  const std::vector<double>& maximum() const noexcept { return max_; }

 private:
  std::vector<double> min_;
  std::vector<double> max_;
};

}  // namespace rad
