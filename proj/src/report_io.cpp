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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "rad/harness.hpp"

namespace rad {
namespace {

std::string real(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string percent(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * v);
  return buf;
}

std::string noise_dir(double noise) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", noise);
  return buf;
}

}  // namespace

std::filesystem::path batch_csv_path(const std::filesystem::path& output_dir, Strategy strategy,
                                     double noise, std::size_t repetition) {
  return output_dir / std::string(to_string(strategy)) / noise_dir(noise) / std::to_string(repetition) /
         "batches.csv";
}

std::string batch_csv_header() {
  return "batch_index,batch_size,drawn_noise_level,selected_count,selected_true_clean_count,"
         "oracle_queries,inactive_total,test_accuracy,cumulative_A,cumulative_A_truth,"
         "cumulative_A_normalized,cumulative_A_truth_normalized\n";
}

std::string format_batch_csv(std::span<const BatchReport> reports) {
  std::string out = batch_csv_header();
  for (const auto& r : reports) {
    out += std::to_string(r.batch_index) + ',' + std::to_string(r.batch_size) + ',' +
           real(r.drawn_noise_level) + ',' + std::to_string(r.selected_count) + ',' +
           std::to_string(r.selected_true_clean_count) + ',' + std::to_string(r.oracle_queries) + ',' +
           std::to_string(r.inactive_total) + ',' + real(r.test_accuracy) + ',' + real(r.cumulative_A) +
           ',' + real(r.cumulative_A_truth) + ',' + real(r.cumulative_A_normalized) + ',' +
           real(r.cumulative_A_truth_normalized) + '\n';
  }
  return out;
}

std::string format_comparison_csv(std::span<const ComparisonRow> rows) {
  // Accuracy columns in percent, same order as the paper-style result tables.
  std::string out =
      "algorithm,noise,initial_accuracy,no_sel,opt_sel,full_clean,proposed,improvement_room,improvement,"
      "oracle_queries,repetitions,failed\n";
  for (const auto& row : rows) {
    out += row.algorithm + ',' + noise_dir(row.noise) + ',' + percent(row.initial_accuracy) + ',' +
           percent(row.no_sel) + ',' + percent(row.opt_sel) + ',' + percent(row.full_clean) + ',' +
           percent(row.proposed) + ',' + percent(row.improvement_room) + ',' + percent(row.improvement) +
           ',' + (std::isnan(row.oracle_queries) ? std::string() : real(row.oracle_queries)) + ',' +
           std::to_string(row.repetitions) + ',' + std::to_string(row.failed) + '\n';
  }
  return out;
}

std::string format_summary(std::span<const ExperimentResult> results) {
  std::string out = "# experiment summary\nevaluation = end_of_arrival\n";
  for (const auto& result : results) {
    for (const auto& outcome : result.outcomes) {
      for (const auto& run : outcome.runs) {
        out += "\n[run]\n";
        out += "variant = " + std::string(to_string(run.strategy)) + "\n";
        out += "noise = " + noise_dir(run.noise_mean) + "\n";
        out += "repetition = " + std::to_string(run.repetition) + "\n";
        out += "seed = " + std::to_string(run.trace.seed) + "\n";
        if (run.error) {
          out += "status = failed\nerror = " + *run.error + "\n";
          continue;
        }
        out += "status = ok\n";
        out += "initial_accuracy = " + real(run.trace.initial_accuracy) + "\n";
        const auto& reports = run.trace.reports;
        out += "final_accuracy = " + real(reports.empty() ? run.trace.initial_accuracy : reports.back().test_accuracy) + "\n";
        out += "A = " + real(reports.empty() ? 0.0 : reports.back().cumulative_A) + "\n";
        out += "A_truth = " + real(reports.empty() ? 0.0 : reports.back().cumulative_A_truth) + "\n";
        out += "oracle_queries = " + std::to_string(run.oracle_queries_total) + "\n";
        out += "final_pool_size = " + std::to_string(run.final_pool_size) + "\n";
      }
      out += "\n[aggregate]\n";
      out += "variant = " + std::string(to_string(outcome.strategy)) + "\n";
      out += "noise = " + noise_dir(result.config.noise.mean_level) + "\n";
      out += "repetitions = " + std::to_string(outcome.runs.size()) + "\n";
      if (!outcome.summary) {
        out += "status = failed\n";
        continue;
      }
      const auto& s = *outcome.summary;
      out += "successful = " + std::to_string(s.repetitions) + "\n";
      out += "initial_accuracy = " + real(s.initial_accuracy) + "\n";
      out += "final_accuracy_mean = " + real(s.final_accuracy) + "\n";
      out += "final_accuracy_variance = " + real(s.final_accuracy_variance) + "\n";
      out += "oracle_queries_mean = " + real(s.oracle_queries_mean) + "\n";
      if (s.improvement) out += "improvement = " + real(*s.improvement) + "\n";
      if (s.improvement_room) out += "improvement_room = " + real(*s.improvement_room) + "\n";
    }
  }
  std::vector<ComparisonRow> rows;
  for (const auto& result : results) rows.push_back(result.row);
  out += "\n[comparison]\n" + format_comparison_csv(rows);
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_run_outputs(const ExperimentResult& result, const std::filesystem::path& output_dir) {
  for (const auto& outcome : result.outcomes) {
    for (const auto& run : outcome.runs) {
      if (run.error) continue;
      write_text_file(batch_csv_path(output_dir, run.strategy, run.noise_mean, run.repetition),
                      format_batch_csv(run.trace.reports));
    }
  }
}

}  // namespace rad
