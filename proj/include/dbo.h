// Copyright 2026 The dbo Authors. All Rights Reserved.
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
// =============================================================================

/* C interface to the distributed Bayesian optimization engine. All handles
 * are opaque. Every function returns a dbo_status; on failure the message
 * is available from dbo_last_error() on the same thread. Strings returned
 * through out-parameters stay valid until the owning handle is destroyed
 * or the same call is repeated on it. */

#ifndef DBO_H
#define DBO_H

#include <stddef.h>
#include <stdint.h>

#if defined(DBO_BUILDING_LIBRARY)
#define DBO_API __attribute__((visibility("default")))
#else
#define DBO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dbo_status {
  DBO_OK = 0,
  DBO_ERR_INVALID_ARGUMENT = 1,
  DBO_ERR_CONFIG = 2,
  DBO_ERR_NUMERICAL = 3,
  DBO_ERR_PROTOCOL = 4,
  DBO_ERR_UNSUPPORTED_METRIC = 5,
  DBO_ERR_IO = 6,
  DBO_ERR_BUDGET = 7,
  DBO_ERR_INTERNAL = 100
} dbo_status;

typedef enum dbo_ci { DBO_CI_NORMAL = 0, DBO_CI_STUDENT_T = 1 } dbo_ci;

typedef struct dbo_experiment dbo_experiment;
typedef struct dbo_objective dbo_objective;
typedef struct dbo_node dbo_node;

DBO_API const char* dbo_version(void);
DBO_API const char* dbo_last_error(void);
DBO_API const char* dbo_status_name(dbo_status status);

/* ---- registries ---------------------------------------------------------- */

DBO_API size_t dbo_objective_count(void);
DBO_API dbo_status dbo_objective_info(size_t index, const char** name, const char** description,
                                      size_t* default_dim, int* configurable_dim);
DBO_API size_t dbo_method_count(void);
DBO_API dbo_status dbo_method_info(size_t index, const char** name, const char** description);
DBO_API size_t dbo_preset_count(void);
DBO_API dbo_status dbo_preset_info(size_t index, const char** name, const char** description);

/* ---- experiments --------------------------------------------------------- */

DBO_API dbo_status dbo_experiment_from_json(const char* json_text, dbo_experiment** out);
DBO_API dbo_status dbo_experiment_from_file(const char* path, dbo_experiment** out);
/* Number of runs in a preset bundle, and one run of it. Output directories
 * are placed under output_root. */
DBO_API dbo_status dbo_preset_run_count(const char* preset, size_t* count);
DBO_API dbo_status dbo_experiment_from_preset(const char* preset, const char* output_root, size_t run,
                                              dbo_experiment** out);
DBO_API void dbo_experiment_destroy(dbo_experiment* exp);

DBO_API dbo_status dbo_experiment_set_seed(dbo_experiment* exp, uint64_t seed);
DBO_API dbo_status dbo_experiment_set_trials(dbo_experiment* exp, size_t trials);
DBO_API dbo_status dbo_experiment_set_output_dir(dbo_experiment* exp, const char* dir);
DBO_API dbo_status dbo_experiment_set_post_init_index(dbo_experiment* exp, int enabled);
DBO_API dbo_status dbo_experiment_set_ci(dbo_experiment* exp, dbo_ci ci);
/* Effective configuration as JSON. */
DBO_API dbo_status dbo_experiment_config_json(dbo_experiment* exp, const char** json_text);
DBO_API dbo_status dbo_experiment_output_dir(dbo_experiment* exp, const char** dir);

/* Runs every (trial, method) pair and aggregates the results. */
DBO_API dbo_status dbo_experiment_run(dbo_experiment* exp);
/* Writes traces.csv, summary.csv and regret.svg into the output directory. */
DBO_API dbo_status dbo_experiment_write_outputs(dbo_experiment* exp);
DBO_API dbo_status dbo_experiment_trace_count(dbo_experiment* exp, size_t* count);
DBO_API dbo_status dbo_experiment_failure_count(dbo_experiment* exp, size_t* count);
DBO_API dbo_status dbo_experiment_failure(dbo_experiment* exp, size_t index, const char** method,
                                          size_t* trial, const char** message);
DBO_API dbo_status dbo_experiment_summary_count(dbo_experiment* exp, size_t* count);
DBO_API dbo_status dbo_experiment_summary_row(dbo_experiment* exp, size_t index, const char** method,
                                              size_t* eval_index, double* mean, double* median,
                                              double* ci_lo, double* ci_hi);
/* "immediate_regret" or "best_so_far". */
DBO_API dbo_status dbo_experiment_metric(dbo_experiment* exp, const char** metric);

/* ---- plotting ------------------------------------------------------------ */

/* Reads a traces or summary CSV and writes an SVG plot. title may be NULL. */
DBO_API dbo_status dbo_plot_csv(const char* csv_path, const char* svg_path, const char* title,
                                int linear_axis);

/* ---- objectives ---------------------------------------------------------- */

/* params_json may be NULL for defaults. */
DBO_API dbo_status dbo_objective_create(const char* name, const char* params_json, dbo_objective** out);
DBO_API void dbo_objective_destroy(dbo_objective* obj);
DBO_API size_t dbo_objective_dim(const dbo_objective* obj);
DBO_API dbo_status dbo_objective_bounds(const dbo_objective* obj, double* lo, double* hi);
DBO_API dbo_status dbo_objective_eval(const dbo_objective* obj, const double* x, double* y);
/* *known is set to 0 when the minimum is not known. */
DBO_API dbo_status dbo_objective_min(const dbo_objective* obj, double* f_min, int* known);

/* ---- single nodes -------------------------------------------------------- */

/* Node `node` of the fleet that experiment method `method` runs in trial
 * `trial`, on the experiment's objective for that trial. */
DBO_API dbo_status dbo_node_create(const dbo_experiment* exp, size_t method, size_t trial, size_t node,
                                   dbo_node** out);
DBO_API void dbo_node_destroy(dbo_node* node);
DBO_API size_t dbo_node_dim(const dbo_node* node);
/* Evaluates the next query. x receives dim values. *done is set to 1 (and
 * nothing else written) once the node's budget is spent. */
DBO_API dbo_status dbo_node_step(dbo_node* node, uint64_t* node_id, uint64_t* seq, double* x, double* y,
                                 int* done);
/* Delivers one broadcast record; *added is 1 when it was new. */
DBO_API dbo_status dbo_node_ingest(dbo_node* node, uint64_t node_id, uint64_t seq, const double* x, double y,
                                   int* added);
DBO_API size_t dbo_node_known(const dbo_node* node);
/* Posterior mean and variance at x under the node's current model. */
DBO_API dbo_status dbo_node_posterior(dbo_node* node, const double* x, double* mean, double* variance);

#ifdef __cplusplus
}
#endif

#endif /* DBO_H */
