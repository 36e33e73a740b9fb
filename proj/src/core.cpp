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

#include "rad/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>
#include <string_view>

namespace rad {
namespace {

constexpr std::uint64_t kSyntheticTag = 0x5359'4e54;  // "SYNT"

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      return cells;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

template <typename T>
bool parse_number(std::string_view cell, T& out) {
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, std::uint64_t index) noexcept {
  std::uint64_t z = base ^ (tag * 0x9E3779B97F4A7C15ULL) ^ (index * 0xD1B54A32D192ED03ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void StreamConfig::validate() const {
  if (num_classes < 2) throw ValidationError("stream: num_classes must be >= 2");
  if (num_features < 1) throw ValidationError("stream: num_features must be >= 1");
  if (initial_batch_size < 1) throw ValidationError("stream: initial_batch_size must be >= 1");
  if (batch_size < 1) throw ValidationError("stream: batch_size must be >= 1");
  if (test_size < 1) throw ValidationError("stream: test_size must be >= 1");
}

void validate_instance(const LabeledInstance& instance, int num_classes, std::size_t num_features) {
  if (instance.given_label < 0 || instance.given_label >= num_classes ||
      instance.true_label < 0 || instance.true_label >= num_classes) {
    throw ValidationError("instance " + std::to_string(instance.id) + ": label outside [0, " +
                          std::to_string(num_classes) + ")");
  }
  if (instance.is_clean != (instance.given_label == instance.true_label)) {
    throw ValidationError("instance " + std::to_string(instance.id) + ": inconsistent clean flag");
  }
  if (instance.features.size() != num_features) {
    throw ValidationError("instance " + std::to_string(instance.id) + ": expected " +
                          std::to_string(num_features) + " features, got " +
                          std::to_string(instance.features.size()));
  }
}

Dataset load_csv(const std::filesystem::path& path, int num_classes) {
  if (num_classes < 2) throw ValidationError("load_csv: num_classes must be >= 2");
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  const auto header = split_cells(line);
  if (header.size() < 2 || header.back() != "label") {
    throw ParseError("header must be f0,...,f{n-1},label", 1);
  }
  for (std::size_t j = 0; j + 1 < header.size(); ++j) {
    if (header[j] != "f" + std::to_string(j)) {
      throw ParseError("header column " + std::to_string(j) + " must be f" + std::to_string(j), 1);
    }
  }

  Dataset dataset;
  dataset.num_classes = num_classes;
  dataset.num_features = header.size() - 1;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_cells(line);
    if (cells.size() != header.size()) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " columns, got " +
                            std::to_string(cells.size()));
    }
    std::vector<double> features(dataset.num_features);
    for (std::size_t j = 0; j < dataset.num_features; ++j) {
      if (!parse_number(cells[j], features[j]) || !std::isfinite(features[j])) {
        throw ParseError("feature f" + std::to_string(j) + " is not a finite decimal: '" +
                             std::string(cells[j]) + "'",
                         line_no);
      }
    }
    ClassLabel label = 0;
    if (!parse_number(cells.back(), label)) {
      throw ParseError("label is not a base-10 integer: '" + std::string(cells.back()) + "'",
                       line_no);
    }
    if (label < 0 || label >= num_classes) {
      throw ValidationError("line " + std::to_string(line_no) + ": label " +
                            std::to_string(label) + " outside [0, " +
                            std::to_string(num_classes) + ")");
    }
    dataset.instances.push_back(
        LabeledInstance::make_clean(dataset.instances.size(), std::move(features), label));
  }
  return dataset;
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (std::size_t j = 0; j < dataset.num_features; ++j) out << 'f' << j << ',';
  out << "label\n";
  char buf[64];
  for (const auto& inst : dataset.instances) {
    for (double v : inst.features) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
      out.write(buf, end - buf);
      out.put(',');
    }
    out << inst.given_label << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<std::vector<double>> synthetic_class_means(int num_classes, std::size_t num_features,
                                                       double separation) {
  const auto k = static_cast<std::size_t>(num_classes);
  std::vector<std::vector<double>> means(k, std::vector<double>(num_features, 0.0));
  if (k <= num_features) {
    // separation * e_c; pairs end up separation * sqrt(2) apart.
    for (std::size_t c = 0; c < k; ++c) means[c][c] = separation;
    return means;
  }
  // More classes than dimensions: integer lattice with spacing `separation`.
  std::size_t side = 2;
  while (std::pow(static_cast<double>(side), static_cast<double>(num_features)) < static_cast<double>(k)) {
    ++side;
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t code = c;
    for (std::size_t j = 0; j < num_features; ++j) {
      means[c][j] = static_cast<double>(code % side) * separation;
      code /= side;
    }
  }
  return means;
}

Dataset generate_synthetic(const StreamConfig& config, double separation) {
  return generate_synthetic(config, separation, config.required_instances());
}

Dataset generate_synthetic(const StreamConfig& config, double separation, std::size_t count) {
  config.validate();
  if (!(separation > 0.0)) throw ValidationError("generate_synthetic: separation must be > 0");
  const auto means = synthetic_class_means(config.num_classes, config.num_features, separation);

  Rng rng(derive_seed(config.seed, kSyntheticTag));
  std::normal_distribution<double> unit(0.0, 1.0);
  Dataset dataset;
  dataset.num_classes = config.num_classes;
  dataset.num_features = config.num_features;
  dataset.instances.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto label = static_cast<ClassLabel>(i % static_cast<std::size_t>(config.num_classes));
    std::vector<double> x(config.num_features);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = means[static_cast<std::size_t>(label)][j] + unit(rng);
    dataset.instances.push_back(LabeledInstance::make_clean(i, std::move(x), label));
  }
  return dataset;
}

StreamSplit split_stream(const Dataset& dataset, const StreamConfig& config, Rng& rng) {
  config.validate();
  const std::size_t required = config.required_instances();
  if (dataset.size() < required) throw SizingError(required, dataset.size());

  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (!config.stratified) {
    std::shuffle(order.begin(), order.end(), rng);
  } else {
    // Spread each class evenly along the sequence so every contiguous slice
    // receives roughly its proportional share of every class.
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(dataset.num_classes));
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      by_class.at(static_cast<std::size_t>(dataset.instances[i].given_label)).push_back(i);
    }
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    std::vector<std::pair<double, std::size_t>> keyed;
    keyed.reserve(dataset.size());
    for (auto& members : by_class) {
      std::shuffle(members.begin(), members.end(), rng);
      const auto n = static_cast<double>(members.size());
      for (std::size_t j = 0; j < members.size(); ++j) {
        keyed.emplace_back((static_cast<double>(j) + jitter(rng)) / n, members[j]);
      }
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size(); ++i) order[i] = keyed[i].second;
  }

  std::size_t cursor = 0;
  auto take = [&](std::size_t n) {
    std::vector<LabeledInstance> out;
    out.reserve(n);
    if (config.stratified) std::shuffle(order.begin() + static_cast<std::ptrdiff_t>(cursor),
                                        order.begin() + static_cast<std::ptrdiff_t>(cursor + n), rng);
    for (std::size_t i = 0; i < n; ++i) out.push_back(dataset.instances[order[cursor + i]]);
    cursor += n;
    return out;
  };

  StreamSplit split;
  split.initial.index = 0;
  split.initial.instances = take(config.initial_batch_size);
  split.arrivals.reserve(config.num_batches);
  for (std::size_t b = 0; b < config.num_batches; ++b) {
    Batch batch;
    batch.index = b + 1;
    batch.instances = take(config.batch_size);
    split.arrivals.push_back(std::move(batch));
  }
  split.test = take(config.test_size);
  return split;
}

void MinMaxScaler::fit(std::span<const LabeledInstance> instances) {
  if (instances.empty()) throw ValidationError("MinMaxScaler::fit on empty set");
  const std::size_t f = instances.front().features.size();
  min_.assign(instances.front().features.begin(), instances.front().features.end());
  max_ = min_;
  for (const auto& inst : instances) {
    if (inst.features.size() != f) throw ValidationError("MinMaxScaler::fit: ragged features");
    for (std::size_t j = 0; j < f; ++j) {
      min_[j] = std::min(min_[j], inst.features[j]);
      max_[j] = std::max(max_[j], inst.features[j]);
    }
  }
}

void MinMaxScaler::transform(LabeledInstance& instance) const {
  if (instance.features.size() != min_.size()) {
    throw ValidationError("MinMaxScaler::transform: feature width mismatch");
  }
  for (std::size_t j = 0; j < min_.size(); ++j) {
    const double range = max_[j] - min_[j];
    instance.features[j] = range > 0.0 ? (instance.features[j] - min_[j]) / range : 0.0;
  }
}

void MinMaxScaler::transform(std::span<LabeledInstance> instances) const {
  for (auto& inst : instances) transform(inst);
}

void MinMaxScaler::transform(StreamSplit& split) const {
  transform(std::span<LabeledInstance>(split.initial.instances));
  for (auto& batch : split.arrivals) transform(std::span<LabeledInstance>(batch.instances));
  transform(std::span<LabeledInstance>(split.test));
}

}  // namespace rad
