// Copyright 2026 The evollm Authors
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

/* C interface to the evollm optimization library.
 *
 * Conventions:
 *  - Every function returns an evollm_status; EVOLLM_OK is zero.
 *  - On failure, evollm_last_error() describes the most recent error on the
 *    calling thread.
 *  - Strings returned through char** are heap-allocated and must be released
 *    with evollm_string_free().
 *  - Configuration is passed as JSON text using the same schema as the CLI
 *    config files.
 *  - Fitness is minimized.
 */
#ifndef EVOLLM_EVOLLM_H_
#define EVOLLM_EVOLLM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(EVOLLM_BUILDING_LIBRARY)
#define EVOLLM_API __declspec(dllexport)
#else
#define EVOLLM_API __declspec(dllimport)
#endif
#else
#define EVOLLM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum evollm_status {
  EVOLLM_OK = 0,
  EVOLLM_ERR_INVALID_ARGUMENT = 1,
  EVOLLM_ERR_SHAPE = 2,
  EVOLLM_ERR_INDEX = 3,
  EVOLLM_ERR_CODEC = 4,
  EVOLLM_ERR_PARSE = 5,
  EVOLLM_ERR_BACKEND = 6,
  EVOLLM_ERR_CONFIG = 7,
  EVOLLM_ERR_IO = 8,
  EVOLLM_ERR_RENDER = 9,
  EVOLLM_ERR_EVALUATION = 10,
  EVOLLM_ERR_AGGREGATION = 11,
  EVOLLM_ERR_REPORT = 12,
  /* Insufficient output capacity; the required size is still reported. */
  EVOLLM_ERR_BUFFER_TOO_SMALL = 13,
  EVOLLM_ERR_INTERNAL = 99
} evollm_status;

typedef struct evollm_archive evollm_archive;
typedef struct evollm_problem evollm_problem;
typedef struct evollm_strategy evollm_strategy;

/* ---- General ---------------------------------------------------------- */

EVOLLM_API const char* evollm_version(void);
/* Message of the last failed call on this thread; never NULL. */
EVOLLM_API const char* evollm_last_error(void);
EVOLLM_API const char* evollm_status_name(evollm_status status);
EVOLLM_API void evollm_string_free(char* s);
/* 0 trace ... 6 off. Default 3 (warnings). */
EVOLLM_API evollm_status evollm_set_log_level(int level);

/* ---- Codec -------------------------------------------------------------- */

EVOLLM_API evollm_status evollm_encode(double x, double lower, double upper,
                                       int64_t resolution, int64_t* out_bin);
/* out_clamped may be NULL. */
EVOLLM_API evollm_status evollm_decode(int64_t bin, double lower, double upper,
                                       int64_t resolution, double* out_x,
                                       int* out_clamped);

/* ---- Archive ------------------------------------------------------------ */

EVOLLM_API evollm_status evollm_archive_create(const double* lower,
                                               const double* upper,
                                               size_t dims,
                                               evollm_archive** out);
EVOLLM_API void evollm_archive_destroy(evollm_archive* archive);
/* candidates: rows x dims, row-major. */
EVOLLM_API evollm_status evollm_archive_append(evollm_archive* archive,
                                               const double* candidates,
                                               size_t rows, size_t dims,
                                               const double* fitness);
EVOLLM_API evollm_status evollm_archive_size(const evollm_archive* archive,
                                             size_t* out_generations);
/* Best evaluation overall; solution must hold dims values. */
EVOLLM_API evollm_status evollm_archive_best(const evollm_archive* archive,
                                             double* out_solution, size_t dims,
                                             double* out_fitness);
/* Improvement flags (0/1) of generation k; out must hold rows values. */
EVOLLM_API evollm_status evollm_archive_improved(const evollm_archive* archive,
                                                 size_t k, int* out_flags,
                                                 size_t rows);

/* ---- Prompt ------------------------------------------------------------- */

/* prompt_json: prompt settings object (NULL for defaults); codec_json:
 * {"lower","upper","resolution"} (NULL for defaults). Dimensions
 * [block_start, block_end) are rendered. */
EVOLLM_API evollm_status evollm_render_prompt(const evollm_archive* archive,
                                              const char* prompt_json,
                                              const char* codec_json,
                                              size_t block_start,
                                              size_t block_end, uint64_t seed,
                                              char** out_text);
/* out_bins must hold width values. EVOLLM_ERR_PARSE on a malformed
 * completion. out_clamped may be NULL. */
EVOLLM_API evollm_status evollm_parse_proposal(const char* completion,
                                               size_t width,
                                               int64_t resolution,
                                               int64_t* out_bins,
                                               int* out_clamped);
/* *out_ok is 1 when text matches the prompt grammar. */
EVOLLM_API evollm_status evollm_prompt_matches_grammar(const char* text,
                                                       int* out_ok);

/* ---- Problems ----------------------------------------------------------- */

/* task_json: task settings object, e.g. {"name":"sphere","dims":2}. */
EVOLLM_API evollm_status evollm_problem_create(const char* task_json,
                                               evollm_problem** out);
EVOLLM_API void evollm_problem_destroy(evollm_problem* problem);
EVOLLM_API evollm_status evollm_problem_dims(const evollm_problem* problem,
                                             size_t* out_dims);
/* Fitness for rows x dims candidates; generation selects rollout seeds. */
EVOLLM_API evollm_status evollm_problem_evaluate(const evollm_problem* problem,
                                                 const double* candidates,
                                                 size_t rows, size_t dims,
                                                 size_t generation,
                                                 double* out_fitness);

/* ---- Strategies --------------------------------------------------------- */

/* config_json: full experiment config; bounds come from its task, the
 * population size from its budget and the backend from its backend
 * section. */
EVOLLM_API evollm_status evollm_strategy_create(const char* config_json,
                                                uint64_t seed,
                                                evollm_strategy** out);
EVOLLM_API void evollm_strategy_destroy(evollm_strategy* strategy);
EVOLLM_API evollm_status evollm_strategy_shape(const evollm_strategy* strategy,
                                               size_t* out_rows,
                                               size_t* out_dims);
/* Writes rows x dims candidates; capacity is in doubles. */
EVOLLM_API evollm_status evollm_strategy_ask(evollm_strategy* strategy,
                                             double* out_candidates,
                                             size_t capacity);
EVOLLM_API evollm_status evollm_strategy_tell(evollm_strategy* strategy,
                                              const double* fitness,
                                              size_t rows);
EVOLLM_API evollm_status evollm_strategy_mean(const evollm_strategy* strategy,
                                              double* out_mean, size_t dims);
EVOLLM_API evollm_status evollm_strategy_best(const evollm_strategy* strategy,
                                              double* out_solution,
                                              size_t dims,
                                              double* out_fitness);
EVOLLM_API evollm_status evollm_strategy_generation(
    const evollm_strategy* strategy, size_t* out_generation);
/* Details of the last tell as JSON (model calls, fallbacks). */
EVOLLM_API evollm_status evollm_strategy_step_info(
    const evollm_strategy* strategy, char** out_json);

/* ---- Harness ------------------------------------------------------------ */

/* Loads a config file (path may be NULL for defaults), applies
 * "dot.path=value" overrides and returns the fully materialized config. */
EVOLLM_API evollm_status evollm_config_resolve(const char* path,
                                               const char* const* overrides,
                                               size_t n_overrides,
                                               char** out_json);
/* Runs all seeds; returns a JSON summary of the runs. */
EVOLLM_API evollm_status evollm_run_experiment(const char* config_json,
                                               char** out_json);
/* axes: "path=v1,v2" strings. Returns the labelled grid that was run. */
EVOLLM_API evollm_status evollm_run_ablation(const char* config_json,
                                             const char* const* axes,
                                             size_t n_axes, char** out_json);
/* Same grid without running it. */
EVOLLM_API evollm_status evollm_ablation_grid(const char* config_json,
                                              const char* const* axes,
                                              size_t n_axes, char** out_json);
EVOLLM_API evollm_status evollm_aggregate(const char* dir, char** out_json);
EVOLLM_API evollm_status evollm_report(const char* dir, int plots,
                                       char** out_json);
/* out_path NULL uses the config's finetune.output. */
EVOLLM_API evollm_status evollm_export_finetune(const char* config_json,
                                                const char* out_path,
                                                size_t* out_records);
EVOLLM_API evollm_status evollm_dataset_stats(const char* path,
                                              char** out_json);
/* Result JSON: {"checked": n, "ok": bool, "problems": [...]}. */
EVOLLM_API evollm_status evollm_validate_prompt_file(const char* path,
                                                     char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* EVOLLM_EVOLLM_H_ */
