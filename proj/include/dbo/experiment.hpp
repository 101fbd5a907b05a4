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

#ifndef DBO_EXPERIMENT_HPP
#define DBO_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dbo/config.hpp"
#include "dbo/objective.hpp"

namespace dbo {

struct TraceRow {
  std::size_t eval_index = 0;  // 1-based
  std::uint64_t node_id = 0;
  std::int64_t tick = 0;
  Point x;
  double y = 0.0;
  double best_so_far = 0.0;
  double immediate_regret = 0.0;  // NaN when the objective's minimum is unknown
};

struct RegretTrace {
  std::string method;
  std::size_t trial = 0;
  std::size_t init_count = 0;  // initialization evaluations in the run
  std::vector<TraceRow> rows;
  std::vector<std::string> flags;
};

struct TrialFailure {
  std::string method;
  std::size_t trial = 0;
  std::string message;
};

struct ExperimentResult {
  std::vector<RegretTrace> traces;  // ordered by (trial, method)
  std::vector<TrialFailure> failures;
  std::size_t dim = 0;
  bool regret_known = true;
  std::size_t fit_cache_hits = 0;
};

// Seed of trial r; every method of a comparison uses it.
std::uint64_t trial_seed(std::uint64_t master, std::size_t trial);

// The objective as instantiated for a trial. GP-sampled objectives draw a
// fresh function per trial unless objective_params fixes "seed".
Objective trial_objective(const ExperimentConfig& config, std::size_t trial);

// With config.post_init_index the initialization rows are dropped from the
// returned trace and eval_index restarts at 1 after them.

// Node configurations of one (method, trial). `method` indexes
// config.method_names().
std::vector<NodeConfig> fleet_configs(const ExperimentConfig& config, const Objective& objective,
                                      std::size_t method, std::size_t trial);

RegretTrace run_trial(const ExperimentConfig& config, const Objective& objective, std::size_t method,
                      std::size_t trial);

// All (trial, method) runs. A trial that throws is recorded in `failures`
// and left out of the traces.
ExperimentResult run_experiment(const ExperimentConfig& config);

enum class Metric { kAuto, kImmediateRegret, kBestSoFar };

struct SummaryRow {
  std::string method;
  std::size_t eval_index = 0;
  double mean = 0.0;
  double median = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::size_t n = 0;
};

struct Summary {
  std::vector<SummaryRow> rows;  // sorted by (method, eval_index)
  std::string metric = "immediate_regret";
  std::vector<std::string> flags;
};

// Per (method, eval_index) mean, median and 95% interval of the metric over
// trials. kAuto uses immediate regret when every trace has it, else the best
// value so far. Results do not depend on the order of the traces. With one
// trial the interval collapses to the mean and a flag is raised.
Summary aggregate(const std::vector<RegretTrace>& traces, CiMethod ci = CiMethod::kNormal,
                  Metric metric = Metric::kAuto);

// 97.5% quantile multiplier for n samples.
double ci_multiplier(CiMethod ci, std::size_t n);

}  // namespace dbo

#endif  // DBO_EXPERIMENT_HPP
