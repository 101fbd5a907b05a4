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

#include "dbo.h"

#include <memory>
#include <string>
#include <vector>

#include "dbo/config.hpp"
#include "dbo/error.hpp"
#include "dbo/experiment.hpp"
#include "dbo/objectives.hpp"
#include "dbo/report.hpp"

struct dbo_experiment {
  dbo::ExperimentConfig config;
  std::optional<dbo::ExperimentResult> result;
  std::optional<dbo::Summary> summary;
  std::string json_text;
};

struct dbo_objective {
  dbo::Objective objective;
};

struct dbo_node {
  std::shared_ptr<dbo::Objective> objective;
  std::unique_ptr<dbo::Node> node;
};

namespace {

thread_local std::string g_last_error;

dbo_status fail(dbo_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

dbo_status from_code(dbo::ErrorCode code) {
  switch (code) {
    case dbo::ErrorCode::kInvalidArgument: return DBO_ERR_INVALID_ARGUMENT;
    case dbo::ErrorCode::kConfig: return DBO_ERR_CONFIG;
    case dbo::ErrorCode::kNumericalFailure: return DBO_ERR_NUMERICAL;
    case dbo::ErrorCode::kProtocolViolation: return DBO_ERR_PROTOCOL;
    case dbo::ErrorCode::kUnsupportedMetric: return DBO_ERR_UNSUPPORTED_METRIC;
    case dbo::ErrorCode::kIo: return DBO_ERR_IO;
    case dbo::ErrorCode::kBudgetExhausted: return DBO_ERR_BUDGET;
  }
  return DBO_ERR_INTERNAL;
}

template <typename F>
dbo_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return DBO_OK;
  } catch (const dbo::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(DBO_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(DBO_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DBO_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* what) {
  if (!p) throw dbo::InvalidArgument(std::string(what) + " is null");
}

const dbo::ExperimentResult& result_of(const dbo_experiment* exp) {
  require(exp, "experiment");
  if (!exp->result) throw dbo::InvalidArgument("experiment has not been run");
  return *exp->result;
}

}  // namespace

extern "C" {

const char* dbo_version(void) { return "0.1.0"; }

const char* dbo_last_error(void) { return g_last_error.c_str(); }

const char* dbo_status_name(dbo_status status) {
  switch (status) {
    case DBO_OK: return "ok";
    case DBO_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DBO_ERR_CONFIG: return "configuration error";
    case DBO_ERR_NUMERICAL: return "numerical failure";
    case DBO_ERR_PROTOCOL: return "protocol violation";
    case DBO_ERR_UNSUPPORTED_METRIC: return "unsupported metric";
    case DBO_ERR_IO: return "i/o error";
    case DBO_ERR_BUDGET: return "budget exhausted";
    case DBO_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

size_t dbo_objective_count(void) { return dbo::objective_registry().size(); }

dbo_status dbo_objective_info(size_t index, const char** name, const char** description, size_t* default_dim,
                              int* configurable_dim) {
  return guarded([&] {
    const auto& reg = dbo::objective_registry();
    if (index >= reg.size()) throw dbo::InvalidArgument("objective index out of range");
    if (name) *name = reg[index].name.c_str();
    if (description) *description = reg[index].description.c_str();
    if (default_dim) *default_dim = reg[index].default_dim;
    if (configurable_dim) *configurable_dim = reg[index].configurable_dim ? 1 : 0;
  });
}

size_t dbo_method_count(void) { return dbo::all_methods().size(); }

dbo_status dbo_method_info(size_t index, const char** name, const char** description) {
  static const std::vector<std::pair<std::string, std::string>> kInfo = [] {
    std::vector<std::pair<std::string, std::string>> v;
    for (dbo::Method m : dbo::all_methods()) v.emplace_back(std::string(dbo::to_string(m)), dbo::method_description(m));
    return v;
  }();
  return guarded([&] {
    if (index >= kInfo.size()) throw dbo::InvalidArgument("method index out of range");
    if (name) *name = kInfo[index].first.c_str();
    if (description) *description = kInfo[index].second.c_str();
  });
}

size_t dbo_preset_count(void) { return dbo::preset_names().size(); }

dbo_status dbo_preset_info(size_t index, const char** name, const char** description) {
  static const std::vector<std::string> kDescriptions = [] {
    std::vector<std::string> v;
    for (const auto& n : dbo::preset_names()) v.push_back(dbo::get_preset(n).description);
    return v;
  }();
  return guarded([&] {
    if (index >= kDescriptions.size()) throw dbo::InvalidArgument("preset index out of range");
    if (name) *name = dbo::preset_names()[index].c_str();
    if (description) *description = kDescriptions[index].c_str();
  });
}

dbo_status dbo_experiment_from_json(const char* json_text, dbo_experiment** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    auto exp = std::make_unique<dbo_experiment>();
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
      throw dbo::ConfigError(std::string("config: ") + e.what());
    }
    exp->config = dbo::parse_config(doc);
    *out = exp.release();
  });
}

dbo_status dbo_experiment_from_file(const char* path, dbo_experiment** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto exp = std::make_unique<dbo_experiment>();
    exp->config = dbo::load_config(path);
    *out = exp.release();
  });
}

dbo_status dbo_preset_run_count(const char* preset, size_t* count) {
  return guarded([&] {
    require(preset, "preset");
    require(count, "count");
    *count = dbo::get_preset(preset).runs.size();
  });
}

dbo_status dbo_experiment_from_preset(const char* preset, const char* output_root, size_t run,
                                      dbo_experiment** out) {
  return guarded([&] {
    require(preset, "preset");
    require(out, "out");
    dbo::Preset p = dbo::get_preset(preset, output_root ? output_root : "out");
    if (run >= p.runs.size()) throw dbo::InvalidArgument("preset run index out of range");
    auto exp = std::make_unique<dbo_experiment>();
    exp->config = p.runs[run];
    *out = exp.release();
  });
}

void dbo_experiment_destroy(dbo_experiment* exp) { delete exp; }

dbo_status dbo_experiment_set_seed(dbo_experiment* exp, uint64_t seed) {
  return guarded([&] {
    require(exp, "experiment");
    exp->config.seed = seed;
    exp->result.reset();
  });
}

dbo_status dbo_experiment_set_trials(dbo_experiment* exp, size_t trials) {
  return guarded([&] {
    require(exp, "experiment");
    if (trials < 1) throw dbo::ConfigError("trials must be at least 1");
    exp->config.trials = trials;
    exp->result.reset();
  });
}

dbo_status dbo_experiment_set_output_dir(dbo_experiment* exp, const char* dir) {
  return guarded([&] {
    require(exp, "experiment");
    require(dir, "dir");
    exp->config.output_dir = dir;
  });
}

dbo_status dbo_experiment_set_post_init_index(dbo_experiment* exp, int enabled) {
  return guarded([&] {
    require(exp, "experiment");
    exp->config.post_init_index = enabled != 0;
    exp->result.reset();
  });
}

dbo_status dbo_experiment_set_ci(dbo_experiment* exp, dbo_ci ci) {
  return guarded([&] {
    require(exp, "experiment");
    if (ci != DBO_CI_NORMAL && ci != DBO_CI_STUDENT_T) throw dbo::InvalidArgument("unknown ci method");
    exp->config.ci = ci == DBO_CI_NORMAL ? dbo::CiMethod::kNormal : dbo::CiMethod::kStudentT;
    if (exp->result && !exp->result->traces.empty()) exp->summary = dbo::aggregate(exp->result->traces, exp->config.ci);
  });
}

dbo_status dbo_experiment_config_json(dbo_experiment* exp, const char** json_text) {
  return guarded([&] {
    require(exp, "experiment");
    require(json_text, "json_text");
    exp->json_text = dbo::to_json(exp->config).dump(2);
    *json_text = exp->json_text.c_str();
  });
}

dbo_status dbo_experiment_output_dir(dbo_experiment* exp, const char** dir) {
  return guarded([&] {
    require(exp, "experiment");
    require(dir, "dir");
    *dir = exp->config.output_dir.c_str();
  });
}

dbo_status dbo_experiment_run(dbo_experiment* exp) {
  return guarded([&] {
    require(exp, "experiment");
    exp->result.reset();
    exp->summary.reset();
    exp->result = dbo::run_experiment(exp->config);
    if (!exp->result->traces.empty()) exp->summary = dbo::aggregate(exp->result->traces, exp->config.ci);
  });
}

dbo_status dbo_experiment_write_outputs(dbo_experiment* exp) {
  return guarded([&] { exp->summary = dbo::write_outputs(result_of(exp), exp->config); });
}

dbo_status dbo_experiment_trace_count(dbo_experiment* exp, size_t* count) {
  return guarded([&] {
    require(count, "count");
    *count = result_of(exp).traces.size();
  });
}

dbo_status dbo_experiment_failure_count(dbo_experiment* exp, size_t* count) {
  return guarded([&] {
    require(count, "count");
    *count = result_of(exp).failures.size();
  });
}

dbo_status dbo_experiment_failure(dbo_experiment* exp, size_t index, const char** method, size_t* trial,
                                  const char** message) {
  return guarded([&] {
    const auto& f = result_of(exp).failures;
    if (index >= f.size()) throw dbo::InvalidArgument("failure index out of range");
    if (method) *method = f[index].method.c_str();
    if (trial) *trial = f[index].trial;
    if (message) *message = f[index].message.c_str();
  });
}

dbo_status dbo_experiment_summary_count(dbo_experiment* exp, size_t* count) {
  return guarded([&] {
    require(count, "count");
    result_of(exp);
    *count = exp->summary ? exp->summary->rows.size() : 0;
  });
}

dbo_status dbo_experiment_summary_row(dbo_experiment* exp, size_t index, const char** method, size_t* eval_index,
                                      double* mean, double* median, double* ci_lo, double* ci_hi) {
  return guarded([&] {
    result_of(exp);
    if (!exp->summary || index >= exp->summary->rows.size()) throw dbo::InvalidArgument("summary index out of range");
    const auto& r = exp->summary->rows[index];
    if (method) *method = r.method.c_str();
    if (eval_index) *eval_index = r.eval_index;
    if (mean) *mean = r.mean;
    if (median) *median = r.median;
    if (ci_lo) *ci_lo = r.ci_lo;
    if (ci_hi) *ci_hi = r.ci_hi;
  });
}

dbo_status dbo_experiment_metric(dbo_experiment* exp, const char** metric) {
  return guarded([&] {
    require(metric, "metric");
    result_of(exp);
    if (!exp->summary) throw dbo::InvalidArgument("experiment produced no traces");
    *metric = exp->summary->metric.c_str();
  });
}

dbo_status dbo_plot_csv(const char* csv_path, const char* svg_path, const char* title, int linear_axis) {
  return guarded([&] {
    require(csv_path, "csv_path");
    require(svg_path, "svg_path");
    dbo::PlotOptions options;
    if (title) options.title = title;
    options.log_y = linear_axis == 0;
    dbo::plot_csv(csv_path, svg_path, options);
  });
}

dbo_status dbo_objective_create(const char* name, const char* params_json, dbo_objective** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    nlohmann::json params = nlohmann::json::object();
    if (params_json) {
      try {
        params = nlohmann::json::parse(params_json);
      } catch (const nlohmann::json::exception& e) {
        throw dbo::ConfigError(std::string("objective params: ") + e.what());
      }
    }
    *out = new dbo_objective{dbo::get_objective(name, params)};
  });
}

void dbo_objective_destroy(dbo_objective* obj) { delete obj; }

size_t dbo_objective_dim(const dbo_objective* obj) { return obj ? obj->objective.dim : 0; }

dbo_status dbo_objective_bounds(const dbo_objective* obj, double* lo, double* hi) {
  return guarded([&] {
    require(obj, "objective");
    require(lo, "lo");
    require(hi, "hi");
    for (std::size_t j = 0; j < obj->objective.dim; ++j) {
      lo[j] = obj->objective.bounds.lo[j];
      hi[j] = obj->objective.bounds.hi[j];
    }
  });
}

dbo_status dbo_objective_eval(const dbo_objective* obj, const double* x, double* y) {
  return guarded([&] {
    require(obj, "objective");
    require(x, "x");
    require(y, "y");
    *y = obj->objective(std::span<const double>(x, obj->objective.dim));
  });
}

dbo_status dbo_objective_min(const dbo_objective* obj, double* f_min, int* known) {
  return guarded([&] {
    require(obj, "objective");
    require(known, "known");
    *known = obj->objective.f_min ? 1 : 0;
    if (f_min && obj->objective.f_min) *f_min = *obj->objective.f_min;
  });
}

dbo_status dbo_node_create(const dbo_experiment* exp, size_t method, size_t trial, size_t node, dbo_node** out) {
  return guarded([&] {
    require(exp, "experiment");
    require(out, "out");
    auto h = std::make_unique<dbo_node>();
    h->objective = std::make_shared<dbo::Objective>(dbo::trial_objective(exp->config, trial));
    auto configs = dbo::fleet_configs(exp->config, *h->objective, method, trial);
    if (node >= configs.size()) throw dbo::InvalidArgument("node index out of range");
    h->node = std::make_unique<dbo::Node>(configs[node]);
    *out = h.release();
  });
}

void dbo_node_destroy(dbo_node* node) { delete node; }

size_t dbo_node_dim(const dbo_node* node) { return node ? node->objective->dim : 0; }

dbo_status dbo_node_step(dbo_node* node, uint64_t* node_id, uint64_t* seq, double* x, double* y, int* done) {
  return guarded([&] {
    require(node, "node");
    require(done, "done");
    auto r = node->node->step(*node->objective);
    if (!r) {
      *done = 1;
      return;
    }
    *done = 0;
    const auto& rec = r->message.record;
    if (node_id) *node_id = rec.node_id;
    if (seq) *seq = rec.seq;
    if (x) std::copy(rec.x.begin(), rec.x.end(), x);
    if (y) *y = rec.y;
  });
}

dbo_status dbo_node_ingest(dbo_node* node, uint64_t node_id, uint64_t seq, const double* x, double y, int* added) {
  return guarded([&] {
    require(node, "node");
    require(x, "x");
    dbo::BroadcastMessage msg{{node_id, seq, dbo::Point(x, x + node->objective->dim), y}};
    std::size_t n = node->node->ingest(std::span<const dbo::BroadcastMessage>(&msg, 1));
    if (added) *added = n > 0 ? 1 : 0;
  });
}

size_t dbo_node_known(const dbo_node* node) { return node ? node->node->known() : 0; }

dbo_status dbo_node_posterior(dbo_node* node, const double* x, double* mean, double* variance) {
  return guarded([&] {
    require(node, "node");
    require(x, "x");
    const dbo::GPModel& model = node->node->refresh_model();
    dbo::Posterior p = model.posterior(std::span<const double>(x, node->objective->dim));
    if (mean) *mean = p.mean;
    if (variance) *variance = p.variance;
  });
}

}  // extern "C"
