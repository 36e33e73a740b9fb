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

#include "rad/metrics.hpp"

namespace rad {

std::size_t count_truth_consistent(std::span<const LabeledInstance> instances) noexcept {
  std::size_t n = 0;
  for (const auto& inst : instances) n += inst.given_label == inst.true_label ? 1 : 0;
  return n;
}

StepResult make_step_result(const Batch& batch, std::vector<LabeledInstance> selected,
                            std::size_t oracle_queries, std::size_t inactive_total) {
  StepResult result;
  result.report.batch_index = batch.index;
  result.report.batch_size = batch.size();
  result.report.drawn_noise_level = batch.drawn_noise_level;
  result.report.selected_count = selected.size();
  result.report.selected_true_clean_count = count_truth_consistent(selected);
  result.report.oracle_queries = oracle_queries;
  result.report.inactive_total = inactive_total;
  result.selection.batch_index = batch.index;
  result.selection.batch_size = batch.size();
  result.selection.selected = std::move(selected);
  return result;
}

double active_fraction(std::span<const BatchReport> reports) {
  double a = 0.0;
  for (const auto& r : reports) a += static_cast<double>(r.selected_count) / static_cast<double>(r.batch_size);
  return a;
}

double active_truth_fraction(std::span<const BatchReport> reports) {
  double a = 0.0;
  for (const auto& r : reports) {
    a += static_cast<double>(r.selected_true_clean_count) / static_cast<double>(r.batch_size);
  }
  return a;
}

void CumulativeMetrics::record(BatchReport& report, double test_accuracy) {
  if (report.batch_size == 0) throw ValidationError("metrics: empty batch");
  if (report.selected_true_clean_count > report.selected_count) {
    throw ValidationError("metrics: more truth-consistent than selected instances");
  }
  ++arrivals_;
  a_ += static_cast<double>(report.selected_count) / static_cast<double>(report.batch_size);
  a_truth_ += static_cast<double>(report.selected_true_clean_count) / static_cast<double>(report.batch_size);
  report.test_accuracy = test_accuracy;
  report.cumulative_A = a_;
  report.cumulative_A_truth = a_truth_;
  report.cumulative_A_normalized = a_ / static_cast<double>(arrivals_);
  report.cumulative_A_truth_normalized = a_truth_ / static_cast<double>(arrivals_);
}

RunSummary aggregate_runs(std::span<const RunTrace> runs) {
  if (runs.empty()) throw ValidationError("aggregate_runs: no repetitions");
  const auto& first = runs.front();
  for (const auto& run : runs) {
    if (run.config_fingerprint != first.config_fingerprint) {
      throw ValidationError("aggregate_runs: repetitions differ in more than the seed");
    }
    if (run.reports.size() != first.reports.size()) {
      throw ValidationError("aggregate_runs: repetitions have different arrival counts");
    }
  }

  const auto n = static_cast<double>(runs.size());
  RunSummary summary;
  summary.repetitions = runs.size();
  const std::size_t arrivals = first.reports.size();
  summary.accuracy_series.assign(arrivals, 0.0);
  summary.accuracy_variance.assign(arrivals, 0.0);
  double queries = 0.0;
  for (const auto& run : runs) {
    summary.initial_accuracy += run.initial_accuracy / n;
    for (std::size_t i = 0; i < arrivals; ++i) summary.accuracy_series[i] += run.reports[i].test_accuracy / n;
    for (const auto& r : run.reports) queries += static_cast<double>(r.oracle_queries);
    summary.final_accuracies.push_back(arrivals ? run.reports.back().test_accuracy : run.initial_accuracy);
  }
  for (const auto& run : runs) {
    for (std::size_t i = 0; i < arrivals; ++i) {
      const double d = run.reports[i].test_accuracy - summary.accuracy_series[i];
      summary.accuracy_variance[i] += d * d / n;
    }
  }
  for (double f : summary.final_accuracies) summary.final_accuracy += f / n;
  for (double f : summary.final_accuracies) {
    const double d = f - summary.final_accuracy;
    summary.final_accuracy_variance += d * d / n;
  }
  summary.oracle_queries_mean = queries / n;
  return summary;
}

void attach_baselines(RunSummary& summary, const RunSummary* no_sel, const RunSummary* opt_sel,
                      const RunSummary* full_clean) {
  if (no_sel) summary.no_sel_final = no_sel->final_accuracy;
  if (opt_sel) summary.opt_sel_final = opt_sel->final_accuracy;
  if (full_clean) summary.full_clean_final = full_clean->final_accuracy;
  if (no_sel) summary.improvement = summary.final_accuracy - no_sel->final_accuracy;
  if (no_sel && full_clean) summary.improvement_room = full_clean->final_accuracy - no_sel->final_accuracy;
}

}  // namespace rad
