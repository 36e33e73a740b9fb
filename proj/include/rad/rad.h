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

/* C interface to the library. Objects are opaque handles created and
 * destroyed through this API. Every fallible call returns a rad_status; on
 * failure rad_last_error() describes the problem (per calling thread). */

#ifndef RAD_RAD_H_
#define RAD_RAD_H_

#include <stddef.h>
#include <stdint.h>

#if defined(RAD_BUILDING_LIBRARY)
#define RAD_API __attribute__((visibility("default")))
#else
#define RAD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rad_status {
  RAD_OK = 0,
  RAD_ERR_INVALID_ARGUMENT = 1,
  RAD_ERR_PARSE = 2,
  RAD_ERR_VALIDATION = 3,
  RAD_ERR_SIZING = 4,
  RAD_ERR_IO = 5,
  RAD_ERR_CONFIG = 6,
  RAD_ERR_RUNTIME = 7,
  RAD_ERR_BUFFER_TOO_SMALL = 8,
  RAD_ERR_NOT_FOUND = 9
} rad_status;

typedef struct rad_config rad_config;
typedef struct rad_dataset rad_dataset;
typedef struct rad_result rad_result;

typedef struct rad_comparison_row {
  char algorithm[32];
  /* Accuracies are fractions in [0, 1]; NaN when the column was not run. */
  double noise;
  double initial_accuracy;
  double no_sel;
  double opt_sel;
  double full_clean;
  double proposed;
  double improvement_room;
  double improvement;
  double oracle_queries;
  size_t repetitions;
  size_t failed;
} rad_comparison_row;

RAD_API const char* rad_version(void);
RAD_API const char* rad_last_error(void);
RAD_API const char* rad_status_string(rad_status status);

/* Configuration: flat dotted keys, see README. */
RAD_API rad_status rad_config_create(rad_config** out);
RAD_API rad_status rad_config_load(const char* path, rad_config** out);
RAD_API rad_status rad_config_parse(const char* text, rad_config** out);
RAD_API rad_status rad_config_set(rad_config* config, const char* key, const char* value);
/* Accepts "--key=value". */
RAD_API rad_status rad_config_apply_override(rad_config* config, const char* argument);
/* Copies the value including the terminating NUL. `needed` (optional)
 * receives the required capacity. */
RAD_API rad_status rad_config_get(const rad_config* config, const char* key, char* buffer,
                                  size_t capacity, size_t* needed);
RAD_API void rad_config_destroy(rad_config* config);

/* Datasets. */
RAD_API rad_status rad_dataset_load_csv(const char* path, int num_classes, rad_dataset** out);
/* Synthetic dataset from the stream.* and dataset.* keys of `config`. */
RAD_API rad_status rad_dataset_generate(const rad_config* config, rad_dataset** out);
RAD_API rad_status rad_dataset_write_csv(const rad_dataset* dataset, const char* path);
RAD_API size_t rad_dataset_size(const rad_dataset* dataset);
RAD_API size_t rad_dataset_num_features(const rad_dataset* dataset);
RAD_API int rad_dataset_num_classes(const rad_dataset* dataset);
RAD_API rad_status rad_dataset_row(const rad_dataset* dataset, size_t index, double* features,
                                   size_t capacity, int32_t* label);
RAD_API void rad_dataset_destroy(rad_dataset* dataset);

/* Experiments. Report files are written when output.dir is set. */
RAD_API rad_status rad_run_experiment(const rad_config* config, rad_result** out);
/* Expands matrix.variants x matrix.noise_levels. A failing entry is
 * recorded as a failure; the call still succeeds. */
RAD_API rad_status rad_run_matrix(const rad_config* config, rad_result** out);
RAD_API size_t rad_result_row_count(const rad_result* result);
RAD_API rad_status rad_result_row(const rad_result* result, size_t index, rad_comparison_row* out);
/* Failed repetitions and failed matrix entries, as diagnostics. */
RAD_API size_t rad_result_failure_count(const rad_result* result);
RAD_API const char* rad_result_failure(const rad_result* result, size_t index);
/* Per-batch CSV of one repetition of `strategy` within row `row`. */
RAD_API rad_status rad_result_batches_csv(const rad_result* result, size_t row, const char* strategy,
                                          size_t repetition, char* buffer, size_t capacity,
                                          size_t* needed);
RAD_API rad_status rad_result_comparison_csv(const rad_result* result, char* buffer, size_t capacity,
                                             size_t* needed);
RAD_API void rad_result_destroy(rad_result* result);

#ifdef __cplusplus
}
#endif

#endif /* RAD_RAD_H_ */
