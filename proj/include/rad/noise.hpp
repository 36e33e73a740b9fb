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

#pragma once

#include <cstdint>

#include "rad/core.hpp"

namespace rad {

enum class StdDevMode { absolute, relative };

/// Target label-noise level and its per-batch fluctuation.
struct NoiseSpec {
  double mean_level = 0.3;
  /// relative: sigma = std_dev * mean_level; absolute: sigma = std_dev.
  StdDevMode std_dev_mode = StdDevMode::relative;
  double std_dev = 0.2;
  std::uint64_t seed = 1;

  void validate() const;
  double sigma() const noexcept {
    return std_dev_mode == StdDevMode::relative ? std_dev * mean_level : std_dev;
  }
};

/// Gaussian draw around `spec.mean_level`, clamped to [0, 1].
double draw_batch_noise_level(const NoiseSpec& spec, Rng& rng);

/// Number of labels flipped for a batch of `batch_size` at `level`.
std::size_t flip_count(double level, std::size_t batch_size) noexcept;

/// Flips exactly `flip_count(level, |batch|)` distinct instances, chosen
/// uniformly, to a class drawn uniformly from the K-1 classes other than the
/// true one. Records `level` as the batch's drawn noise level.
Batch inject_symmetric_noise(Batch batch, double level, int num_classes, Rng& rng);

/// In-place form used by the harness.
void inject_symmetric_noise_in_place(Batch& batch, double level, int num_classes, Rng& rng);

}  // namespace rad
