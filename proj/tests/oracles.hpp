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

// Brute-force reference implementations used by the tests. Each is written
// independently of the library code it checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "rad/core.hpp"
#include "rad/metrics.hpp"

namespace oracle {

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double t = a[j] - b[j];
    d += t * t;
  }
  return d;
}

// Sort every stored point by (distance, index), take k, majority vote with
// the lowest class winning ties.
inline rad::ClassLabel knn_predict(const std::vector<std::vector<double>>& points,
                                   const std::vector<rad::ClassLabel>& labels, int num_classes,
                                   std::size_t k, std::span<const double> query) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < points.size(); ++i) all.emplace_back(squared_distance(points[i], query), i);
  std::sort(all.begin(), all.end());
  std::vector<int> votes(static_cast<std::size_t>(num_classes), 0);
  for (std::size_t i = 0; i < std::min(k, all.size()); ++i) ++votes[static_cast<std::size_t>(labels[all[i].second])];
  rad::ClassLabel best = 0;
  for (int c = 1; c < num_classes; ++c) {
    if (votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)]) best = c;
  }
  return best;
}

inline std::vector<std::vector<double>> class_means(const std::vector<rad::LabeledInstance>& data,
                                                    int num_classes, std::size_t num_features) {
  std::vector<std::vector<double>> means(static_cast<std::size_t>(num_classes));
  for (int c = 0; c < num_classes; ++c) {
    std::vector<double> sum(num_features, 0.0);
    std::size_t n = 0;
    for (const auto& inst : data) {
      if (inst.given_label != c) continue;
      for (std::size_t j = 0; j < num_features; ++j) sum[j] += inst.features[j];
      ++n;
    }
    if (n == 0) continue;
    for (auto& s : sum) s /= static_cast<double>(n);
    means[static_cast<std::size_t>(c)] = sum;
  }
  return means;
}

// Central differences of `f` around `x`, one coordinate at a time.
inline std::vector<double> central_difference(const std::function<double(const std::vector<double>&)>& f,
                                              std::vector<double> x, double h) {
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double keep = x[i];
    x[i] = keep + h;
    const double up = f(x);
    x[i] = keep - h;
    const double down = f(x);
    x[i] = keep;
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

struct Fractions {
  std::vector<double> a;
  std::vector<double> a_truth;
};

// Cumulative A and A-truth straight from the selected sets.
inline Fractions recompute_fractions(const std::vector<rad::SelectionLog>& logs) {
  Fractions out;
  double a = 0.0;
  double at = 0.0;
  for (const auto& log : logs) {
    std::size_t truthful = 0;
    for (const auto& inst : log.selected) truthful += inst.given_label == inst.true_label ? 1 : 0;
    a += static_cast<double>(log.selected.size()) / static_cast<double>(log.batch_size);
    at += static_cast<double>(truthful) / static_cast<double>(log.batch_size);
    out.a.push_back(a);
    out.a_truth.push_back(at);
  }
  return out;
}

// Pearson statistic of observed counts against a uniform expectation.
inline double chi_square_uniform(const std::vector<std::size_t>& counts) {
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  return stat;
}

// Gaussian blobs with random labels attached; small and cheap.
inline std::vector<rad::LabeledInstance> random_points(std::size_t n, std::size_t f, int num_classes,
                                                       std::mt19937_64& rng, double spread = 1.0) {
  std::normal_distribution<double> normal(0.0, spread);
  std::uniform_int_distribution<int> cls(0, num_classes - 1);
  std::vector<rad::LabeledInstance> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(f);
    for (auto& v : x) v = normal(rng);
    out.push_back(rad::LabeledInstance::make_clean(i, std::move(x), cls(rng)));
  }
  return out;
}

}  // namespace oracle
