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

// Experiment driver: builds the noisy stream, runs a framework or baseline
// arrival by arrival, evaluates on the clean test set after every arrival and
// writes plot-ready reports.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rad/baselines.hpp"
#include "rad/config.hpp"
#include "rad/core.hpp"
#include "rad/frameworks.hpp"
#include "rad/metrics.hpp"
#include "rad/models.hpp"
#include "rad/noise.hpp"

namespace rad {

/// Every selectable learner: the four frameworks and the three baselines.
enum class Strategy { rad, voting, active, slimmed, no_sel, opt_sel, full_clean };

std::string_view to_string(Strategy strategy) noexcept;
Strategy parse_strategy(std::string_view name);
bool is_baseline(Strategy strategy) noexcept;

struct DatasetSource {
  enum class Kind { synthetic, csv };

  Kind kind = Kind::synthetic;
  std::filesystem::path path;
  double separation = 3.0;
  /// Synthetic instance count; 0 generates exactly what the stream needs.
  std::size_t size = 0;
};

struct ExperimentConfig {
  DatasetSource dataset;
  StreamConfig stream;
  NoiseSpec noise;
  ClassifierSpec label_model;
  ClassifierSpec classifier;
  Strategy variant = Strategy::rad;
  OracleBudget budget;
  std::size_t repetitions = 3;
  /// Deliver a noiseless initial batch instead of injecting noise into it.
  bool initial_clean = false;
  /// Min-max scaling fitted on the initial batch.
  bool scale_features = false;
  /// Also run no_sel, opt_sel and full_clean on the same streams.
  bool compare_baselines = true;
  std::size_t threads = 1;
  /// Empty: keep results in memory only.
  std::filesystem::path output_dir;

  static ExperimentConfig defaults();
  /// Unknown keys are rejected.
  static ExperimentConfig from_config(const Config& config);
  Config to_config() const;
  void validate() const;
  /// Canonical text of every setting except seeds, threads and output.
  std::string fingerprint() const;
};

/// The stream one repetition sees, noise already injected.
struct PreparedStream {
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  int num_classes = 0;
  StreamSplit split;
};

struct RunResult {
  Strategy strategy = Strategy::rad;
  double noise_mean = 0.0;
  std::size_t repetition = 0;
  RunTrace trace;
  std::vector<SelectionLog> selections;
  std::size_t oracle_queries_total = 0;
  std::size_t final_pool_size = 0;
  /// Set when the repetition aborted; names the batch and stage.
  std::optional<std::string> error;
};

struct StrategyOutcome {
  Strategy strategy = Strategy::rad;
  std::vector<RunResult> runs;
  std::optional<RunSummary> summary;  // absent when every repetition failed
};

/// One line of the comparison table; NaN marks a missing column.
struct ComparisonRow {
  std::string algorithm;
  double noise = 0.0;
  double initial_accuracy = 0.0;
  double no_sel = 0.0;
  double opt_sel = 0.0;
  double full_clean = 0.0;
  double proposed = 0.0;
  double improvement_room = 0.0;
  double improvement = 0.0;
  double oracle_queries = 0.0;
  std::size_t repetitions = 0;
  std::size_t failed = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<StrategyOutcome> outcomes;  // the variant first, then baselines
  ComparisonRow row;

  const StrategyOutcome* find(Strategy strategy) const noexcept;
  /// Summary of the configured variant.
  const RunSummary& summary() const;
};

/// Loads or generates the configured dataset.
Dataset load_dataset(const ExperimentConfig& config);

/// Splits, scales and injects noise for repetition `repetition`.
PreparedStream prepare_stream(const ExperimentConfig& config, const Dataset& dataset,
                              std::size_t repetition);

/// Runs one strategy over a prepared stream. Errors are captured in the result.
RunResult run_strategy(const ExperimentConfig& config, const PreparedStream& stream, Strategy strategy);

/// All repetitions of the variant (and baselines if requested). Writes
/// per-batch CSVs, summary.txt and comparison.csv when `output_dir` is set.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct MatrixEntry {
  ExperimentConfig config;
  std::optional<ExperimentResult> result;
  std::optional<std::string> error;
};

struct MatrixResult {
  std::vector<MatrixEntry> entries;
  std::vector<ComparisonRow> comparison;
};

/// Expands `matrix.variants` x `matrix.noise_levels` over a base config.
std::vector<ExperimentConfig> expand_matrix(const Config& config);

/// Runs every config; a failing config does not stop the others.
MatrixResult run_matrix(const std::vector<ExperimentConfig>& configs,
                        const std::filesystem::path& output_dir = {});

// Report files.
std::string batch_csv_header();
std::string format_batch_csv(std::span<const BatchReport> reports);
std::string format_comparison_csv(std::span<const ComparisonRow> rows);
std::string format_summary(std::span<const ExperimentResult> results);
void write_run_outputs(const ExperimentResult& result, const std::filesystem::path& output_dir);
void write_text_file(const std::filesystem::path& path, const std::string& text);
/// `<out>/<variant>/<noise>/<rep>/batches.csv`
std::filesystem::path batch_csv_path(const std::filesystem::path& output_dir, Strategy strategy,
                                     double noise, std::size_t repetition);

}  // namespace rad
