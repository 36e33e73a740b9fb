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

#include "rad/rad.h"

#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <string>

#include "rad/harness.hpp"

struct rad_config {
  rad::Config config;
};

struct rad_dataset {
  rad::Dataset dataset;
};

struct rad_result {
  std::vector<rad::ExperimentResult> experiments;
  std::vector<rad::ComparisonRow> rows;
  std::vector<std::string> failures;
};

namespace {

thread_local std::string last_error;

rad_status fail(rad_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <typename Fn>
rad_status guarded(Fn&& fn) {
  try {
    fn();
    return RAD_OK;
  } catch (const rad::ParseError& e) {
    return fail(RAD_ERR_PARSE, e.what());
  } catch (const rad::SizingError& e) {
    return fail(RAD_ERR_SIZING, e.what());
  } catch (const rad::ValidationError& e) {
    return fail(RAD_ERR_VALIDATION, e.what());
  } catch (const rad::ConfigError& e) {
    return fail(RAD_ERR_CONFIG, e.what());
  } catch (const rad::IoError& e) {
    return fail(RAD_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(RAD_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RAD_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(RAD_ERR_RUNTIME, e.what());
  }
}

rad_status copy_out(const std::string& value, char* buffer, size_t capacity, size_t* needed) {
  if (needed) *needed = value.size() + 1;
  if (!buffer || capacity < value.size() + 1) {
    return fail(RAD_ERR_BUFFER_TOO_SMALL, "buffer needs " + std::to_string(value.size() + 1) + " bytes");
  }
  std::memcpy(buffer, value.c_str(), value.size() + 1);
  return RAD_OK;
}

void collect_failures(rad_result& out, const rad::ExperimentResult& experiment) {
  for (const auto& outcome : experiment.outcomes) {
    for (const auto& run : outcome.runs) {
      if (run.error) out.failures.push_back(std::string(rad::to_string(run.strategy)) + ": " + *run.error);
    }
  }
}

}  // namespace

extern "C" {

const char* rad_version(void) { return "0.1.0"; }

const char* rad_last_error(void) { return last_error.c_str(); }

const char* rad_status_string(rad_status status) {
  switch (status) {
    case RAD_OK: return "ok";
    case RAD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case RAD_ERR_PARSE: return "parse error";
    case RAD_ERR_VALIDATION: return "validation error";
    case RAD_ERR_SIZING: return "sizing error";
    case RAD_ERR_IO: return "i/o error";
    case RAD_ERR_CONFIG: return "config error";
    case RAD_ERR_RUNTIME: return "runtime error";
    case RAD_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case RAD_ERR_NOT_FOUND: return "not found";
  }
  return "unknown status";
}

rad_status rad_config_create(rad_config** out) {
  if (!out) return fail(RAD_ERR_INVALID_ARGUMENT, "null output handle");
  return guarded([&] { *out = new rad_config{}; });
}

rad_status rad_config_load(const char* path, rad_config** out) {
  if (!path || !out) return fail(RAD_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new rad_config{rad::Config::load(path)}; });
}

rad_status rad_config_parse(const char* text, rad_config** out) {
  if (!text || !out) return fail(RAD_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new rad_config{rad::Config::parse(text)}; });
}

rad_status rad_config_set(rad_config* config, const char* key, const char* value) {
  if (!config || !key || !value) return fail(RAD_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { config->config.set(key, value); });
}

rad_status rad_config_apply_override(rad_config* config, const char* argument) {
  if (!config || !argument) return fail(RAD_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { config->config.apply_override(argument); });
}

rad_status rad_config_get(const rad_config* config, const char* key, char* buffer, size_t capacity,
                          size_t* needed) {
  if (!config || !key) return fail(RAD_ERR_INVALID_ARGUMENT, "null argument");
  auto value = config->config.get(key);
  if (!value) return fail(RAD_ERR_NOT_FOUND, std::string("no key '") + key + "'");
  return copy_out(*value, buffer, capacity, needed);
}

void rad_config_destroy(rad_config* config) { delete config; }

rad_status rad_dataset_load_csv(const char* path, int num_classes, rad_dataset** out) {
  if (!path || !out) return fail(RAD_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new rad_dataset{rad::load_csv(path, num_classes)}; });
}

rad_status rad_dataset_generate(const rad_config* config, rad_dataset** out) {
  if (!config || !out) return fail(RAD_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto experiment = rad::ExperimentConfig::from_config(config->config);
    experiment.dataset.kind = rad::DatasetSource::Kind::synthetic;
    *out = new rad_dataset{rad::load_dataset(experiment)};
  });
}

rad_status rad_dataset_write_csv(const rad_dataset* dataset, const char* path) {
  if (!dataset || !path) return fail(RAD_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { rad::write_csv(dataset->dataset, path); });
}

size_t rad_dataset_size(const rad_dataset* dataset) { return dataset ? dataset->dataset.size() : 0; }

size_t rad_dataset_num_features(const rad_dataset* dataset) {
  return dataset ? dataset->dataset.num_features : 0;
}

int rad_dataset_num_classes(const rad_dataset* dataset) { return dataset ? dataset->dataset.num_classes : 0; }

rad_status rad_dataset_row(const rad_dataset* dataset, size_t index, double* features, size_t capacity,
                           int32_t* label) {
  if (!dataset) return fail(RAD_ERR_INVALID_ARGUMENT, "null dataset");
  if (index >= dataset->dataset.size()) return fail(RAD_ERR_NOT_FOUND, "row index out of range");
  const auto& inst = dataset->dataset.instances[index];
  if (features) {
    if (capacity < inst.features.size()) return fail(RAD_ERR_BUFFER_TOO_SMALL, "feature buffer too small");
    std::memcpy(features, inst.features.data(), inst.features.size() * sizeof(double));
  }
  if (label) *label = inst.given_label;
  return RAD_OK;
}

void rad_dataset_destroy(rad_dataset* dataset) { delete dataset; }

rad_status rad_run_experiment(const rad_config* config, rad_result** out) {
  if (!config || !out) return fail(RAD_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto result = std::make_unique<rad_result>();
    result->experiments.push_back(rad::run_experiment(rad::ExperimentConfig::from_config(config->config)));
    result->rows.push_back(result->experiments.back().row);
    collect_failures(*result, result->experiments.back());
    *out = result.release();
  });
}

rad_status rad_run_matrix(const rad_config* config, rad_result** out) {
  if (!config || !out) return fail(RAD_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto configs = rad::expand_matrix(config->config);
    const auto output_dir = config->config.get_string("output.dir", "");
    auto matrix = rad::run_matrix(configs, output_dir);
    auto result = std::make_unique<rad_result>();
    result->rows = matrix.comparison;
    for (auto& entry : matrix.entries) {
      if (entry.error) result->failures.push_back(*entry.error);
      if (entry.result) {
        collect_failures(*result, *entry.result);
        result->experiments.push_back(std::move(*entry.result));
      }
    }
    *out = result.release();
  });
}

size_t rad_result_row_count(const rad_result* result) { return result ? result->rows.size() : 0; }

rad_status rad_result_row(const rad_result* result, size_t index, rad_comparison_row* out) {
  if (!result || !out) return fail(RAD_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= result->rows.size()) return fail(RAD_ERR_NOT_FOUND, "row index out of range");
  const auto& row = result->rows[index];
  std::memset(out, 0, sizeof *out);
  std::strncpy(out->algorithm, row.algorithm.c_str(), sizeof out->algorithm - 1);
  out->noise = row.noise;
  out->initial_accuracy = row.initial_accuracy;
  out->no_sel = row.no_sel;
  out->opt_sel = row.opt_sel;
  out->full_clean = row.full_clean;
  out->proposed = row.proposed;
  out->improvement_room = row.improvement_room;
  out->improvement = row.improvement;
  out->oracle_queries = row.oracle_queries;
  out->repetitions = row.repetitions;
  out->failed = row.failed;
  return RAD_OK;
}

size_t rad_result_failure_count(const rad_result* result) { return result ? result->failures.size() : 0; }

const char* rad_result_failure(const rad_result* result, size_t index) {
  if (!result || index >= result->failures.size()) return nullptr;
  return result->failures[index].c_str();
}

rad_status rad_result_batches_csv(const rad_result* result, size_t row, const char* strategy,
                                  size_t repetition, char* buffer, size_t capacity, size_t* needed) {
  if (!result || !strategy) return fail(RAD_ERR_INVALID_ARGUMENT, "null argument");
  if (row >= result->experiments.size()) return fail(RAD_ERR_NOT_FOUND, "row index out of range");
  std::string csv;
  auto status = guarded([&] {
    const auto* outcome = result->experiments[row].find(rad::parse_strategy(strategy));
    if (!outcome) throw rad::ValidationError(std::string("strategy '") + strategy + "' was not run");
    if (repetition >= outcome->runs.size()) throw rad::ValidationError("repetition out of range");
    const auto& run = outcome->runs[repetition];
    if (run.error) throw rad::Error(*run.error);
    csv = rad::format_batch_csv(run.trace.reports);
  });
  if (status != RAD_OK) return status;
  return copy_out(csv, buffer, capacity, needed);
}

rad_status rad_result_comparison_csv(const rad_result* result, char* buffer, size_t capacity, size_t* needed) {
  if (!result) return fail(RAD_ERR_INVALID_ARGUMENT, "null argument");
  return copy_out(rad::format_comparison_csv(result->rows), buffer, capacity, needed);
}

void rad_result_destroy(rad_result* result) { delete result; }

}  // extern "C"
