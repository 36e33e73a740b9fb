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

#include "rad/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rad {

void NoiseSpec::validate() const {
  if (!(mean_level >= 0.0 && mean_level <= 1.0)) throw ValidationError("noise.mean must lie in [0, 1]");
  if (!(std_dev >= 0.0)) throw ValidationError("noise.std must be >= 0");
}

double draw_batch_noise_level(const NoiseSpec& spec, Rng& rng) {
  const double sigma = spec.sigma();
  if (sigma == 0.0) return spec.mean_level;
  std::normal_distribution<double> gauss(spec.mean_level, sigma);
  return std::clamp(gauss(rng), 0.0, 1.0);
}

std::size_t flip_count(double level, std::size_t batch_size) noexcept {
  return static_cast<std::size_t>(std::llround(level * static_cast<double>(batch_size)));
}

void inject_symmetric_noise_in_place(Batch& batch, double level, int num_classes, Rng& rng) {
  if (num_classes < 2) throw ValidationError("symmetric noise needs at least 2 classes");
  if (!(level >= 0.0 && level <= 1.0)) throw ValidationError("noise level must lie in [0, 1]");
  batch.drawn_noise_level = level;
  const std::size_t n = batch.size();
  const std::size_t flips = flip_count(level, n);
  if (flips == 0) return;

  // Partial Fisher-Yates: the first `flips` slots become a uniform sample.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::uniform_int_distribution<ClassLabel> other(0, num_classes - 2);
  for (std::size_t i = 0; i < flips; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(order[i], order[pick(rng)]);
    auto& inst = batch.instances[order[i]];
    const ClassLabel draw = other(rng);
    inst.relabel(draw < inst.true_label ? draw : draw + 1);
  }
}

Batch inject_symmetric_noise(Batch batch, double level, int num_classes, Rng& rng) {
  inject_symmetric_noise_in_place(batch, level, num_classes, rng);
  return batch;
}

}  // namespace rad
