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

// Command line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rad/rad.h"

namespace {

struct ConfigHandle {
  rad_config* ptr = nullptr;
  ~ConfigHandle() { rad_config_destroy(ptr); }
};

struct ResultHandle {
  rad_result* ptr = nullptr;
  ~ResultHandle() { rad_result_destroy(ptr); }
};

struct DatasetHandle {
  rad_dataset* ptr = nullptr;
  ~DatasetHandle() { rad_dataset_destroy(ptr); }
};

int report(rad_status status, const std::string& context) {
  std::cerr << "rad-cli: " << context << ": " << rad_status_string(status) << ": " << rad_last_error() << "\n";
  return static_cast<int>(status) + 1;
}

std::string percent(double value) {
  if (std::isnan(value)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value * 100.0);
  return buf;
}

void print_rows(const rad_result* result) {
  std::printf("%-12s %6s %8s %8s %8s %10s %8s %8s %8s %8s %s\n", "algorithm", "noise", "initial", "no_sel",
              "opt_sel", "full_clean", "proposed", "room", "gain", "queries", "failed");
  for (size_t i = 0; i < rad_result_row_count(result); ++i) {
    rad_comparison_row row;
    if (rad_result_row(result, i, &row) != RAD_OK) continue;
    std::printf("%-12s %6.2f %8s %8s %8s %10s %8s %8s %8s %8.1f %zu/%zu\n", row.algorithm, row.noise,
                percent(row.initial_accuracy).c_str(), percent(row.no_sel).c_str(), percent(row.opt_sel).c_str(),
                percent(row.full_clean).c_str(), percent(row.proposed).c_str(),
                percent(row.improvement_room).c_str(), percent(row.improvement).c_str(), row.oracle_queries,
                row.failed, row.repetitions);
  }
  for (size_t i = 0; i < rad_result_failure_count(result); ++i) {
    std::fprintf(stderr, "failure: %s\n", rad_result_failure(result, i));
  }
}

int load_config(const std::string& path, const std::vector<std::string>& overrides, ConfigHandle& config) {
  rad_status status = path.empty() ? rad_config_create(&config.ptr) : rad_config_load(path.c_str(), &config.ptr);
  if (status != RAD_OK) return report(status, path.empty() ? "config" : path);
  for (const auto& item : overrides) {
    std::string arg = item.rfind("--", 0) == 0 ? item : "--" + item;
    status = rad_config_apply_override(config.ptr, arg.c_str());
    if (status != RAD_OK) return report(status, item);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-layer label cleansing for streaming classifiers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rad_version()));

  std::string config_path;
  std::string out_dir;
  std::string csv_out;
  std::vector<std::string> overrides;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config file (key = value)");
    sub->add_option("--set", overrides, "override, key=value (repeatable)");
    sub->allow_extras();
  };

  auto* run = app.add_subcommand("run", "run one experiment");
  add_common(run);
  run->add_option("--out", out_dir, "output directory (overrides output.dir)");
  auto* matrix = app.add_subcommand("matrix", "run matrix.variants x matrix.noise_levels");
  add_common(matrix);
  matrix->add_option("--out", out_dir, "output directory (overrides output.dir)");
  auto* gen = app.add_subcommand("gen-synthetic", "write the synthetic dataset as CSV");
  add_common(gen);
  gen->add_option("--out", csv_out, "CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  CLI::App* active = run->parsed() ? run : matrix->parsed() ? matrix : gen;
  // Unrecognised --key=value arguments are config overrides.
  for (const auto& extra : active->remaining()) {
    if (extra.rfind("--", 0) != 0 || extra.find('=') == std::string::npos) {
      std::cerr << "rad-cli: unexpected argument '" << extra << "'\n";
      return 2;
    }
    overrides.push_back(extra);
  }

  ConfigHandle config;
  if (int rc = load_config(config_path, overrides, config)) return rc;

  if (active == gen) {
    DatasetHandle dataset;
    rad_status status = rad_dataset_generate(config.ptr, &dataset.ptr);
    if (status != RAD_OK) return report(status, "gen-synthetic");
    status = rad_dataset_write_csv(dataset.ptr, csv_out.c_str());
    if (status != RAD_OK) return report(status, csv_out);
    std::printf("wrote %zu instances to %s\n", rad_dataset_size(dataset.ptr), csv_out.c_str());
    return 0;
  }

  if (!out_dir.empty()) {
    rad_status status = rad_config_set(config.ptr, "output.dir", out_dir.c_str());
    if (status != RAD_OK) return report(status, "--out");
  }

  ResultHandle result;
  rad_status status =
      active == run ? rad_run_experiment(config.ptr, &result.ptr) : rad_run_matrix(config.ptr, &result.ptr);
  if (status != RAD_OK) return report(status, active->get_name());
  print_rows(result.ptr);
  return rad_result_failure_count(result.ptr) == 0 ? 0 : 1;
}
