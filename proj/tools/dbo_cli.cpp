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

// Command line front end. Talks to the engine only through dbo.h.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dbo.h"

namespace {

int report(dbo_status status, const char* what) {
  std::fprintf(stderr, "dbo: %s: %s: %s\n", what, dbo_status_name(status), dbo_last_error());
  return static_cast<int>(status);
}

struct RunFlags {
  std::optional<unsigned long long> seed;
  std::optional<std::size_t> trials;
  std::string output_dir;
  bool post_init = false;
  std::string ci = "normal";
  bool quiet = false;
};

void print_final(dbo_experiment* exp) {
  size_t rows = 0;
  if (dbo_experiment_summary_count(exp, &rows) != DBO_OK || rows == 0) return;
  const char* metric = "";
  dbo_experiment_metric(exp, &metric);
  // Rows are grouped by method; print the last row of each group.
  for (size_t i = 0; i < rows; ++i) {
    const char* method = nullptr;
    const char* next = nullptr;
    size_t index = 0;
    double mean = 0, median = 0, lo = 0, hi = 0;
    dbo_experiment_summary_row(exp, i, &method, &index, &mean, &median, &lo, &hi);
    if (i + 1 < rows) dbo_experiment_summary_row(exp, i + 1, &next, nullptr, nullptr, nullptr, nullptr, nullptr);
    if (next && std::string(next) == method) continue;
    std::printf("  %-14s %s at eval %zu: median %.6g  mean %.6g  95%% CI [%.6g, %.6g]\n", method, metric, index,
                median, mean, lo, hi);
  }
}

int run_one(dbo_experiment* exp, const RunFlags& flags) {
  dbo_status st = DBO_OK;
  if (flags.seed && (st = dbo_experiment_set_seed(exp, *flags.seed)) != DBO_OK) return report(st, "--seed");
  if (flags.trials && (st = dbo_experiment_set_trials(exp, *flags.trials)) != DBO_OK) return report(st, "--trials");
  if (!flags.output_dir.empty() && (st = dbo_experiment_set_output_dir(exp, flags.output_dir.c_str())) != DBO_OK) {
    return report(st, "--output-dir");
  }
  if ((st = dbo_experiment_set_post_init_index(exp, flags.post_init ? 1 : 0)) != DBO_OK) return report(st, "--post-init");
  if ((st = dbo_experiment_set_ci(exp, flags.ci == "t" ? DBO_CI_STUDENT_T : DBO_CI_NORMAL)) != DBO_OK) {
    return report(st, "--ci");
  }
  const char* dir = "";
  dbo_experiment_output_dir(exp, &dir);
  if (!flags.quiet) std::printf("running -> %s\n", dir);
  if ((st = dbo_experiment_run(exp)) != DBO_OK) return report(st, "run");
  size_t failures = 0;
  dbo_experiment_failure_count(exp, &failures);
  for (size_t i = 0; i < failures; ++i) {
    const char* method = nullptr;
    const char* message = nullptr;
    size_t trial = 0;
    dbo_experiment_failure(exp, i, &method, &trial, &message);
    std::fprintf(stderr, "warning: %s trial %zu failed: %s\n", method, trial, message);
  }
  if ((st = dbo_experiment_write_outputs(exp)) != DBO_OK) return report(st, "write outputs");
  if (!flags.quiet) {
    print_final(exp);
    std::printf("wrote %s/traces.csv, summary.csv, regret.svg\n", dir);
  }
  return 0;
}

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
  cmd->add_option("--trials", flags.trials, "Override the number of trials");
  cmd->add_option("--output-dir,-o", flags.output_dir, "Override the output directory");
  cmd->add_flag("--post-init", flags.post_init, "Count evaluation indices after initialization");
  cmd->add_option("--ci", flags.ci, "Confidence interval: normal or t")->check(CLI::IsMember({"normal", "t"}));
  cmd->add_flag("--quiet,-q", flags.quiet, "Only report errors");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed Bayesian optimization over a simulated broadcast network"};
  app.require_subcommand(1);
  app.fallthrough();
  RunFlags flags;
  app.add_option("--seed", flags.seed, "Override the master seed");
  app.set_version_flag("--version", std::string(dbo_version()));

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a JSON config file");
  run->add_option("config", config_path, "Config file")->required();
  add_run_flags(run, flags);

  std::string preset;
  std::string output_root = "out";
  auto* bench = app.add_subcommand("bench", "Run a named preset bundle");
  bench->add_option("preset", preset, "Preset name (see list-presets)")->required();
  bench->add_option("--output-root", output_root, "Directory under which preset outputs go");
  add_run_flags(bench, flags);

  std::string csv_path, svg_path, title;
  bool linear = false;
  auto* plot = app.add_subcommand("plot", "Plot a traces or summary CSV as SVG");
  plot->add_option("csv", csv_path, "Input CSV")->required();
  plot->add_option("svg", svg_path, "Output SVG")->required();
  plot->add_option("--title", title, "Plot title");
  plot->add_flag("--linear", linear, "Linear instead of logarithmic value axis");

  auto* list_objectives = app.add_subcommand("list-objectives", "List registered objectives");
  auto* list_methods = app.add_subcommand("list-methods", "List comparison methods");
  auto* list_presets = app.add_subcommand("list-presets", "List preset bundles");

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    dbo_experiment* exp = nullptr;
    dbo_status st = dbo_experiment_from_file(config_path.c_str(), &exp);
    if (st != DBO_OK) return report(st, config_path.c_str());
    int rc = run_one(exp, flags);
    dbo_experiment_destroy(exp);
    return rc;
  }
  if (*bench) {
    size_t count = 0;
    dbo_status st = dbo_preset_run_count(preset.c_str(), &count);
    if (st != DBO_OK) return report(st, preset.c_str());
    if (!flags.output_dir.empty() && count > 1) {
      std::fprintf(stderr, "dbo: --output-dir needs a single-run preset; use --output-root\n");
      return DBO_ERR_CONFIG;
    }
    for (size_t i = 0; i < count; ++i) {
      dbo_experiment* exp = nullptr;
      st = dbo_experiment_from_preset(preset.c_str(), output_root.c_str(), i, &exp);
      if (st != DBO_OK) return report(st, preset.c_str());
      int rc = run_one(exp, flags);
      dbo_experiment_destroy(exp);
      if (rc != 0) return rc;
    }
    return 0;
  }
  if (*plot) {
    dbo_status st = dbo_plot_csv(csv_path.c_str(), svg_path.c_str(), title.empty() ? nullptr : title.c_str(),
                                 linear ? 1 : 0);
    if (st != DBO_OK) return report(st, "plot");
    return 0;
  }
  if (*list_objectives) {
    for (size_t i = 0; i < dbo_objective_count(); ++i) {
      const char* name = nullptr;
      const char* description = nullptr;
      size_t dim = 0;
      int configurable = 0;
      dbo_objective_info(i, &name, &description, &dim, &configurable);
      std::printf("%-12s d=%zu%s  %s\n", name, dim, configurable ? "+" : " ", description);
    }
    return 0;
  }
  if (*list_methods) {
    for (size_t i = 0; i < dbo_method_count(); ++i) {
      const char* name = nullptr;
      const char* description = nullptr;
      dbo_method_info(i, &name, &description);
      std::printf("%-14s %s\n", name, description);
    }
    return 0;
  }
  if (*list_presets) {
    for (size_t i = 0; i < dbo_preset_count(); ++i) {
      const char* name = nullptr;
      const char* description = nullptr;
      dbo_preset_info(i, &name, &description);
      std::printf("%-10s %s\n", name, description);
    }
    return 0;
  }
  return 0;
}
