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

// Exercises the shared library through its C interface only.

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <sys/stat.h>

#include "dbo.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static int file_exists(const char* path) {
  struct stat st;
  return stat(path, &st) == 0;
}

static void test_registries(void) {
  EXPECT(strlen(dbo_version()) > 0);
  EXPECT(dbo_objective_count() >= 8);
  const char* name = NULL;
  const char* desc = NULL;
  size_t dim = 0;
  int configurable = -1;
  EXPECT(dbo_objective_info(0, &name, &desc, &dim, &configurable) == DBO_OK);
  EXPECT(name != NULL && strlen(name) > 0);
  EXPECT(dbo_objective_info(1000, &name, &desc, &dim, &configurable) == DBO_ERR_INVALID_ARGUMENT);
  EXPECT(strlen(dbo_last_error()) > 0);
  EXPECT(dbo_method_count() == 5);
  EXPECT(dbo_method_info(4, &name, &desc) == DBO_OK);
  EXPECT(strcmp(name, "SequentialEI") == 0);
  EXPECT(dbo_preset_count() >= 1);
  EXPECT(strcmp(dbo_status_name(DBO_ERR_CONFIG), dbo_status_name(DBO_OK)) != 0);
}

static void test_objective(void) {
  dbo_objective* obj = NULL;
  EXPECT(dbo_objective_create("branin", NULL, &obj) == DBO_OK);
  EXPECT(dbo_objective_dim(obj) == 2);
  double lo[2], hi[2];
  EXPECT(dbo_objective_bounds(obj, lo, hi) == DBO_OK);
  EXPECT(lo[0] == -5.0 && hi[1] == 15.0);
  double x[2] = {-3.14159265358979323846, 12.275};
  double y = 0.0;
  EXPECT(dbo_objective_eval(obj, x, &y) == DBO_OK);
  EXPECT(fabs(y - 0.397887) < 1e-5);
  double fmin = 0.0;
  int known = 0;
  EXPECT(dbo_objective_min(obj, &fmin, &known) == DBO_OK);
  EXPECT(known == 1 && fabs(fmin - 0.397887) < 1e-5);
  dbo_objective_destroy(obj);

  obj = NULL;
  EXPECT(dbo_objective_create("nope", NULL, &obj) == DBO_ERR_CONFIG);
  EXPECT(obj == NULL);
  EXPECT(strstr(dbo_last_error(), "nope") != NULL);
  EXPECT(dbo_objective_create("ackley", "{\"dim\": ", &obj) == DBO_ERR_CONFIG);
  EXPECT(dbo_objective_create("gp_sample", "{\"anchors\": 20, \"seed\": 2}", &obj) == DBO_OK);
  EXPECT(dbo_objective_min(obj, &fmin, &known) == DBO_OK);
  EXPECT(known == 0);
  dbo_objective_destroy(obj);
  dbo_objective_destroy(NULL);
}

static void test_experiment(const char* out_dir) {
  const char* json =
      "{\"objective\": \"camelback\", \"method\": [\"SP-EI\", \"PDTS\"], \"n_nodes\": 2, \"trials\": 2,"
      " \"budget\": 4, \"p\": 2, \"seed\": 3, \"mh\": {\"chain_length\": 100, \"burn_in\": 20},"
      " \"schedule\": {\"grid_size\": 64}, \"acquisition\": {\"thompson_grid\": 64}}";
  dbo_experiment* exp = NULL;
  EXPECT(dbo_experiment_from_json("{\"temperature\": 1}", &exp) == DBO_ERR_CONFIG);
  EXPECT(exp == NULL);
  EXPECT(dbo_experiment_from_json("not json", &exp) == DBO_ERR_CONFIG);
  EXPECT(dbo_experiment_from_file("/nonexistent.json", &exp) == DBO_ERR_IO);
  EXPECT(dbo_experiment_from_json(json, &exp) == DBO_OK);
  EXPECT(exp != NULL);
  if (!exp) return;

  size_t count = 99;
  EXPECT(dbo_experiment_trace_count(exp, &count) == DBO_ERR_INVALID_ARGUMENT);
  EXPECT(dbo_experiment_write_outputs(exp) == DBO_ERR_INVALID_ARGUMENT);
  EXPECT(dbo_experiment_set_seed(exp, 4) == DBO_OK);
  EXPECT(dbo_experiment_set_trials(exp, 0) == DBO_ERR_CONFIG);
  EXPECT(dbo_experiment_set_output_dir(exp, out_dir) == DBO_OK);
  const char* cfg = NULL;
  EXPECT(dbo_experiment_config_json(exp, &cfg) == DBO_OK);
  EXPECT(strstr(cfg, "\"seed\":4") != NULL || strstr(cfg, "\"seed\": 4") != NULL);

  EXPECT(dbo_experiment_run(exp) == DBO_OK);
  EXPECT(dbo_experiment_trace_count(exp, &count) == DBO_OK);
  EXPECT(count == 4);
  EXPECT(dbo_experiment_failure_count(exp, &count) == DBO_OK);
  EXPECT(count == 0);
  EXPECT(dbo_experiment_summary_count(exp, &count) == DBO_OK);
  EXPECT(count == 2 * 8);
  const char* method = NULL;
  size_t eval_index = 0;
  double mean, median, lo, hi;
  EXPECT(dbo_experiment_summary_row(exp, 0, &method, &eval_index, &mean, &median, &lo, &hi) == DBO_OK);
  EXPECT(eval_index == 1);
  EXPECT(lo <= mean && mean <= hi);
  EXPECT(dbo_experiment_summary_row(exp, count, &method, &eval_index, &mean, &median, &lo, &hi) ==
         DBO_ERR_INVALID_ARGUMENT);
  const char* metric = NULL;
  EXPECT(dbo_experiment_metric(exp, &metric) == DBO_OK);
  EXPECT(strcmp(metric, "immediate_regret") == 0);

  EXPECT(dbo_experiment_write_outputs(exp) == DBO_OK);
  char path[4096];
  snprintf(path, sizeof path, "%s/traces.csv", out_dir);
  EXPECT(file_exists(path));
  snprintf(path, sizeof path, "%s/summary.csv", out_dir);
  EXPECT(file_exists(path));
  snprintf(path, sizeof path, "%s/regret.svg", out_dir);
  EXPECT(file_exists(path));

  char csv[4096], svg[4096];
  snprintf(csv, sizeof csv, "%s/summary.csv", out_dir);
  snprintf(svg, sizeof svg, "%s/from_summary.svg", out_dir);
  EXPECT(dbo_plot_csv(csv, svg, "summary", 0) == DBO_OK);
  EXPECT(file_exists(svg));
  snprintf(csv, sizeof csv, "%s/missing.csv", out_dir);
  snprintf(svg, sizeof svg, "%s/never.svg", out_dir);
  EXPECT(dbo_plot_csv(csv, svg, NULL, 0) == DBO_ERR_IO);
  EXPECT(!file_exists(svg));

  // One node of the SP-EI fleet, driven by hand.
  dbo_node* node = NULL;
  EXPECT(dbo_node_create(exp, 0, 0, 5, &node) == DBO_ERR_INVALID_ARGUMENT);
  EXPECT(dbo_node_create(exp, 0, 0, 1, &node) == DBO_OK);
  if (node) {
    EXPECT(dbo_node_dim(node) == 2);
    uint64_t id = 0, seq = 0;
    double x[2], y = 0.0;
    int done = 0, added = 0;
    int steps = 0;
    while (dbo_node_step(node, &id, &seq, x, &y, &done) == DBO_OK && !done) {
      EXPECT(id == 1);
      EXPECT(seq == (uint64_t)steps);
      ++steps;
    }
    EXPECT(steps == 6);
    double other[2] = {0.5, 0.5};
    double mean_before = 0.0, var_before = -1.0;
    EXPECT(dbo_node_posterior(node, other, &mean_before, &var_before) == DBO_OK);
    EXPECT(dbo_node_ingest(node, 0, 0, other, -0.2, &added) == DBO_OK);
    EXPECT(added == 1);
    EXPECT(dbo_node_ingest(node, 0, 0, other, -0.2, &added) == DBO_OK);
    EXPECT(added == 0);
    EXPECT(dbo_node_ingest(node, 0, 0, other, -0.3, &added) == DBO_ERR_PROTOCOL);
    EXPECT(dbo_node_known(node) == 7);
    double mean_at = 0.0, var_at = -1.0;
    EXPECT(dbo_node_posterior(node, other, &mean_at, &var_at) == DBO_OK);
    EXPECT(var_at >= 0.0 && var_at < var_before);
    EXPECT(fabs(mean_at + 0.2) < 3.0 * sqrt(var_at));
    EXPECT(fabs(mean_at + 0.2) < fabs(mean_before + 0.2));
    dbo_node_destroy(node);
  }
  dbo_experiment_destroy(exp);
}

int main(int argc, char** argv) {
  const char* out_dir = argc > 1 ? argv[1] : "capi_out";
  test_registries();
  test_objective();
  test_experiment(out_dir);
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
