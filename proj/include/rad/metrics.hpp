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

// Per-arrival selection and accuracy metrics, the cumulative active (A) and
// active-truth (A^T) fractions, and aggregation across repetitions.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rad/core.hpp"

namespace rad {

/// One row of the per-batch CSV. Arrivals start at index 1; the initial
/// batch never produces a report.
struct BatchReport {
  std::size_t batch_index = 0;
  std::size_t batch_size = 0;
  double drawn_noise_level = 0.0;
  std::size_t selected_count = 0;
  /// Selected instances whose (possibly replaced) label equals the truth.
  std::size_t selected_true_clean_count = 0;
  std::size_t oracle_queries = 0;
  std::size_t inactive_total = 0;
  double test_accuracy = std::numeric_limits<double>::quiet_NaN();
  double cumulative_A = 0.0;
  double cumulative_A_truth = 0.0;
  double cumulative_A_normalized = 0.0;
  double cumulative_A_truth_normalized = 0.0;
};

/// Raw record of what an arrival contributed to training, kept so metrics
/// can be recomputed independently of the streaming path.
struct SelectionLog {
  std::size_t batch_index = 0;
  std::size_t batch_size = 0;
  std::vector<LabeledInstance> selected;
  /// Batch instances parked as inactive history at this arrival.
  std::size_t deferred = 0;
  /// Batch instances dropped for good at this arrival.
  std::size_t discarded = 0;
};

struct StepResult {
  BatchReport report;
  SelectionLog selection;
};

/// Fills the selection fields of a report from the arrival's selected set.
StepResult make_step_result(const Batch& batch, std::vector<LabeledInstance> selected,
                            std::size_t oracle_queries, std::size_t inactive_total);

std::size_t count_truth_consistent(std::span<const LabeledInstance> instances) noexcept;

/// A = sum over reports of selected_count / batch_size.
double active_fraction(std::span<const BatchReport> reports);
/// A^T = sum over reports of selected_true_clean_count / batch_size.
double active_truth_fraction(std::span<const BatchReport> reports);

/// Streaming accumulator for the cumulative columns.
class CumulativeMetrics {
 public:
  /// Sets `test_accuracy` and the four cumulative fields of `report`.
  void record(BatchReport& report, double test_accuracy);

 private:
  double a_ = 0.0;
  double a_truth_ = 0.0;
  std::size_t arrivals_ = 0;
};

/// One repetition's trajectory.
struct RunTrace {
  std::string config_fingerprint;
  std::uint64_t seed = 0;
  double initial_accuracy = 0.0;
  std::vector<BatchReport> reports;
};

struct RunSummary {
  std::size_t repetitions = 0;
  double initial_accuracy = 0.0;
  double final_accuracy = 0.0;
  /// Population variance across repetitions.
  double final_accuracy_variance = 0.0;
  std::vector<double> final_accuracies;
  std::vector<double> accuracy_series;
  std::vector<double> accuracy_variance;
  double oracle_queries_mean = 0.0;

  std::optional<double> no_sel_final;
  std::optional<double> opt_sel_final;
  std::optional<double> full_clean_final;
  /// final_accuracy - no_sel_final.
  std::optional<double> improvement;
  /// full_clean_final - no_sel_final.
  std::optional<double> improvement_room;
};

/// Mean and variance per arrival. All traces must share a fingerprint and
/// have the same number of arrivals.
RunSummary aggregate_runs(std::span<const RunTrace> runs);

/// Fills the comparison fields from paired baseline summaries (any may be null).
void attach_baselines(RunSummary& summary, const RunSummary* no_sel, const RunSummary* opt_sel,
                      const RunSummary* full_clean);

}  // namespace rad
