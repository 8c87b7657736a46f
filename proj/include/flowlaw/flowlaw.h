/* Copyright 2026 The Flowlaw Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

/* C interface to the flowlaw library.
 *
 * Objects are opaque handles created by *_create / *_load functions and
 * released with the matching *_free. Every fallible call returns a
 * flowlaw_status; on failure flowlaw_last_error() describes the problem for
 * the calling thread until its next call into the library. */
#ifndef FLOWLAW_FLOWLAW_H_
#define FLOWLAW_FLOWLAW_H_

#include <stddef.h>
#include <stdint.h>

#if defined(FLOWLAW_BUILDING_LIBRARY)
#define FLOWLAW_API __attribute__((visibility("default")))
#else
#define FLOWLAW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum flowlaw_status {
  FLOWLAW_OK = 0,
  FLOWLAW_ERR_ARGUMENT = 1, /* null handle or pointer, bad enum value */
  FLOWLAW_ERR_DOMAIN = 2,
  FLOWLAW_ERR_STRUCTURE = 3,
  FLOWLAW_ERR_FORMAT = 4,
  FLOWLAW_ERR_IO = 5,
  FLOWLAW_ERR_TRAINING = 6,
  FLOWLAW_ERR_INTEGRATION = 7,
  FLOWLAW_ERR_BUFFER = 8, /* output buffer too small */
  FLOWLAW_ERR_INTERNAL = 9
} flowlaw_status;

typedef enum flowlaw_activation {
  FLOWLAW_TANH = 0,
  FLOWLAW_SIGMOID = 1
} flowlaw_activation;

typedef enum flowlaw_path_kind {
  FLOWLAW_PATH_TENSION = 0,
  FLOWLAW_PATH_TENSION_EXTENDED = 1,
  FLOWLAW_PATH_COMPRESSION = 2
} flowlaw_path_kind;

typedef struct flowlaw_dataset flowlaw_dataset;
typedef struct flowlaw_model flowlaw_model;
typedef struct flowlaw_law flowlaw_law;

typedef struct flowlaw_jc_params {
  double A, B, C, n, m;
  double eps_dot_ref, T_ref, T_melt;
} flowlaw_jc_params;

typedef struct flowlaw_flow {
  double sigma;
  double d_eps;
  double d_rate;
  double d_T;
} flowlaw_flow;

typedef struct flowlaw_train_config {
  uint64_t iterations;
  double learning_rate;
  double final_learning_rate; /* 0 keeps the rate constant */
  uint64_t decay_start;       /* iteration where the decay begins */
  uint64_t seed;
  uint64_t report_stride;
} flowlaw_train_config;

/* Percent AAREs, E_RMS on normalized stress. */
typedef struct flowlaw_metrics {
  double erms;
  double aare_sigma;
  double aare_deps;
  double aare_drate;
  double aare_dT;
  uint64_t param_count;
  uint64_t rows;
} flowlaw_metrics;

typedef struct flowlaw_bench_summary {
  uint64_t steps;
  double max_relative_deviation;
  uint64_t max_deviation_step;
  double eps_p_a, sigma_a, T_a;
  double eps_p_b, sigma_b, T_b;
} flowlaw_bench_summary;

FLOWLAW_API const char* flowlaw_version(void);
FLOWLAW_API const char* flowlaw_last_error(void);
FLOWLAW_API const char* flowlaw_status_string(flowlaw_status status);

/* Johnson-Cook reference law. */
FLOWLAW_API void flowlaw_jc_defaults(flowlaw_jc_params* params);
FLOWLAW_API flowlaw_status flowlaw_jc_evaluate(const flowlaw_jc_params* params,
                                               double eps_p, double rate,
                                               double T, flowlaw_flow* out);

/* Datasets. */
FLOWLAW_API flowlaw_status flowlaw_dataset_grid(const flowlaw_jc_params* params,
                                                flowlaw_dataset** out);
FLOWLAW_API flowlaw_status flowlaw_dataset_test(const flowlaw_jc_params* params,
                                                uint64_t count, uint64_t seed,
                                                flowlaw_dataset** out);
FLOWLAW_API flowlaw_status flowlaw_dataset_load(const char* path,
                                                flowlaw_dataset** out);
FLOWLAW_API flowlaw_status flowlaw_dataset_save(const flowlaw_dataset* data,
                                                const char* path);
FLOWLAW_API size_t flowlaw_dataset_size(const flowlaw_dataset* data);
FLOWLAW_API uint64_t flowlaw_dataset_hash(const flowlaw_dataset* data);
FLOWLAW_API void flowlaw_dataset_free(flowlaw_dataset* data);

/* Networks. hidden_widths has `depth` entries (1 or 2). */
FLOWLAW_API flowlaw_status flowlaw_model_create(const size_t* hidden_widths,
                                                size_t depth,
                                                flowlaw_activation activation,
                                                const flowlaw_dataset* training,
                                                uint64_t seed,
                                                flowlaw_model** out);
FLOWLAW_API flowlaw_status flowlaw_model_load(const char* path,
                                              flowlaw_model** out);
FLOWLAW_API flowlaw_status flowlaw_model_save(const flowlaw_model* model,
                                              const char* path);
FLOWLAW_API void flowlaw_model_free(flowlaw_model* model);
FLOWLAW_API size_t flowlaw_model_param_count(const flowlaw_model* model);
/* Writes at most `size` bytes including the terminating NUL. */
FLOWLAW_API flowlaw_status flowlaw_model_name(const flowlaw_model* model,
                                              char* buf, size_t size);
FLOWLAW_API flowlaw_status flowlaw_model_predict(const flowlaw_model* model,
                                                 double eps_p, double rate,
                                                 double T, flowlaw_flow* out);
/* Provenance is recorded from the training call, if any. */
FLOWLAW_API flowlaw_status flowlaw_model_train(flowlaw_model* model,
                                               const flowlaw_dataset* data,
                                               const flowlaw_train_config* cfg,
                                               const char* history_csv);
FLOWLAW_API flowlaw_status flowlaw_model_evaluate(const flowlaw_model* model,
                                                  const flowlaw_dataset* test,
                                                  flowlaw_metrics* out);
/* One-line summary of `metrics`, NUL-terminated. */
FLOWLAW_API flowlaw_status flowlaw_metrics_format(const flowlaw_metrics* metrics,
                                                  const char* name, char* buf,
                                                  size_t size);
/* Subroutine source. With buf == NULL, *needed receives the size including
 * the NUL and nothing is written. */
FLOWLAW_API flowlaw_status flowlaw_model_emit(const flowlaw_model* model,
                                              char* buf, size_t size,
                                              size_t* needed);
FLOWLAW_API flowlaw_status flowlaw_model_emit_file(const flowlaw_model* model,
                                                   const char* path);

/* Hardening laws for the material-point benchmark. */
FLOWLAW_API flowlaw_status flowlaw_law_jc(const flowlaw_jc_params* params,
                                          flowlaw_law** out);
FLOWLAW_API flowlaw_status flowlaw_law_model(const flowlaw_model* model,
                                             flowlaw_law** out);
FLOWLAW_API void flowlaw_law_free(flowlaw_law* law);

/* Runs both laws along a preset path; csv_path may be NULL. */
FLOWLAW_API flowlaw_status flowlaw_bench_path(flowlaw_path_kind kind,
                                              const flowlaw_law* law_a,
                                              const flowlaw_law* law_b,
                                              const char* csv_path,
                                              flowlaw_bench_summary* out);

#ifdef __cplusplus
}
#endif

#endif /* FLOWLAW_FLOWLAW_H_ */
