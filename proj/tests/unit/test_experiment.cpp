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

#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "dbo/error.hpp"
#include "dbo/experiment.hpp"
#include "dbo/report.hpp"

using namespace dbo;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.objective = "branin";
  c.methods = {Method::kSPEI, Method::kPDTS, Method::kSequentialEI};
  c.n_nodes = 3;
  c.trials = 2;
  c.budget = 6;
  c.p = 2;
  c.seed = 5;
  c.fit.starts = 2;
  c.fit.evals_per_start = 30;
  c.mh.chain_length = 100;
  c.mh.burn_in = 20;
  c.schedule.grid_size = 64;
  c.greedy = {2, 32, 100};
  c.thompson_grid = 64;
  return c;
}

RegretTrace synthetic(const std::string& method, std::size_t trial, const std::vector<double>& regret) {
  RegretTrace t;
  t.method = method;
  t.trial = trial;
  for (std::size_t i = 0; i < regret.size(); ++i) {
    TraceRow r;
    r.eval_index = i + 1;
    r.x = {0.0};
    r.best_so_far = regret[i] + 1.0;
    r.immediate_regret = regret[i];
    t.rows.push_back(r);
  }
  return t;
}

}  // namespace

TEST_CASE("experiment: methods share the initial design") {
  ExperimentConfig c = small_config();
  ExperimentResult r = run_experiment(c);
  REQUIRE(r.failures.empty());
  REQUIRE(r.traces.size() == 6);
  for (std::size_t trial = 0; trial < 2; ++trial) {
    std::vector<std::vector<std::pair<Point, double>>> inits;
    for (const auto& t : r.traces) {
      if (t.trial != trial) continue;
      CHECK(t.init_count == 6);
      CHECK(t.rows.size() == 12);
      std::vector<std::pair<Point, double>> first;
      for (std::size_t i = 0; i < 6; ++i) first.emplace_back(t.rows[i].x, t.rows[i].y);
      std::sort(first.begin(), first.end());
      inits.push_back(first);
    }
    REQUIRE(inits.size() == 3);
    CHECK(inits[0] == inits[1]);
    CHECK(inits[0] == inits[2]);
  }
  // Different trials draw different designs.
  CHECK(r.traces[0].rows[0].x != r.traces[3].rows[0].x);
}

TEST_CASE("experiment: best_so_far never increases and regret matches it") {
  ExperimentConfig c = small_config();
  c.mode = NetworkMode::kAsync;
  ExperimentResult r = run_experiment(c);
  for (const auto& t : r.traces) {
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
      CHECK(t.rows[i].best_so_far <= t.rows[i - 1].best_so_far);
      CHECK(t.rows[i].eval_index == i + 1);
    }
    for (const auto& row : t.rows) CHECK(row.immediate_regret == doctest::Approx(row.best_so_far - 5.0 / (4.0 * M_PI)));
  }
}

TEST_CASE("experiment: zero budget gives only the initial design") {
  ExperimentConfig c = small_config();
  c.methods = {Method::kSPEI};
  c.trials = 1;
  c.n_nodes = 1;
  c.budget = 0;
  ExperimentResult r = run_experiment(c);
  REQUIRE(r.traces.size() == 1);
  CHECK(r.traces[0].rows.size() == 2);
  c.post_init_index = true;
  CHECK(run_experiment(c).traces[0].rows.empty());
}

TEST_CASE("experiment: post-init indexing drops the initial rows") {
  ExperimentConfig c = small_config();
  c.methods = {Method::kPDTS};
  c.trials = 1;
  c.post_init_index = true;
  RegretTrace t = run_experiment(c).traces.at(0);
  REQUIRE(t.rows.size() == 6);
  CHECK(t.rows.front().eval_index == 1);
  CHECK(t.rows.back().eval_index == 6);
}

TEST_CASE("experiment: repeated runs give identical CSV bytes") {
  ExperimentConfig c = small_config();
  c.methods = {Method::kSPUCB, Method::kSPPI};
  const std::string a = traces_csv(run_experiment(c).traces);
  const std::string b = traces_csv(run_experiment(c).traces);
  CHECK(a == b);
  c.seed = 6;
  CHECK(traces_csv(run_experiment(c).traces) != a);
}

TEST_CASE("experiment: gp_sample objectives fall back to best-so-far") {
  ExperimentConfig c = small_config();
  c.objective = "gp_sample";
  c.objective_params = {{"anchors", 64}, {"lengthscale", 0.2}};
  c.methods = {Method::kSPEI};
  ExperimentResult r = run_experiment(c);
  CHECK_FALSE(r.regret_known);
  CHECK(std::isnan(r.traces[0].rows[0].immediate_regret));
  Summary s = aggregate(r.traces);
  CHECK(s.metric == "best_so_far");
  CHECK_THROWS_AS(aggregate(r.traces, CiMethod::kNormal, Metric::kImmediateRegret), UnsupportedMetric);
  // Each trial draws its own function.
  CHECK(trial_objective(c, 0)(Point{0.3, 0.3}) != trial_objective(c, 1)(Point{0.3, 0.3}));
}

TEST_CASE("experiment: configuration errors propagate") {
  ExperimentConfig c = small_config();
  c.objective = "nope";
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
  c = small_config();
  c.trials = 0;
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
  c = small_config();
  c.fit.initial = KernelSpec{};
  c.fit.initial->lengthscales = {0.3};
  auto nodes = fleet_configs(c, trial_objective(c, 0), 0, 0);
  CHECK(nodes.size() == 3);
  CHECK(nodes[0].fit.initial->lengthscales == std::vector<double>{0.3, 0.3});
  c.fit.initial->lengthscales = {0.3, 0.3, 0.3};
  CHECK_THROWS_AS(fleet_configs(c, trial_objective(c, 0), 0, 0), ConfigError);
  c = small_config();
  auto seq = fleet_configs(c, trial_objective(c, 0), 2, 0);
  REQUIRE(seq.size() == 1);
  CHECK(seq[0].init_points() == 6);
  CHECK(seq[0].budget == 12);
}

TEST_CASE("aggregate: hand-computed interval") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0, 10.0};
  std::vector<RegretTrace> traces;
  for (std::size_t i = 0; i < v.size(); ++i) traces.push_back(synthetic("A", i, {v[i], v[i] * 0.5}));
  Summary s = aggregate(traces);
  REQUIRE(s.rows.size() == 2);
  const long double mean = 4.0L;
  long double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const long double half = 1.96L * std::sqrt(ss / 4.0L) / std::sqrt(5.0L);
  CHECK(s.rows[0].mean == 4.0);
  CHECK(s.rows[0].median == 3.0);
  CHECK(std::abs(s.rows[0].ci_lo - static_cast<double>(mean - half)) <= 1e-12);
  CHECK(std::abs(s.rows[0].ci_hi - static_cast<double>(mean + half)) <= 1e-12);
  CHECK(s.rows[1].mean == 2.0);
  CHECK(s.metric == "immediate_regret");
  CHECK(s.flags.empty());

  Summary t = aggregate(traces, CiMethod::kStudentT);
  const long double half_t = static_cast<long double>(ci_multiplier(CiMethod::kStudentT, 5)) * std::sqrt(ss / 4.0L) / std::sqrt(5.0L);
  CHECK(std::abs(t.rows[0].ci_hi - static_cast<double>(mean + half_t)) <= 1e-12);
  CHECK(ci_multiplier(CiMethod::kStudentT, 10) == doctest::Approx(2.262).epsilon(2e-4));
  CHECK(ci_multiplier(CiMethod::kNormal, 10) == 1.96);
}

TEST_CASE("aggregate: degenerate cases and permutation invariance") {
  Summary one = aggregate({synthetic("A", 0, {0.5, 0.25})});
  CHECK(one.rows[0].ci_lo == one.rows[0].mean);
  CHECK(one.rows[0].ci_hi == one.rows[0].mean);
  CHECK(one.flags == std::vector<std::string>{"single_trial:A"});

  std::vector<RegretTrace> same;
  for (std::size_t i = 0; i < 4; ++i) same.push_back(synthetic("B", i, {0.3, 0.1}));
  for (const auto& row : aggregate(same).rows) {
    CHECK(row.ci_lo == row.mean);
    CHECK(row.ci_hi == row.mean);
  }

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<RegretTrace> many;
  for (std::size_t i = 0; i < 10; ++i) {
    many.push_back(synthetic("A", i, {u(rng), u(rng) * 1e-9, u(rng) * 1e7}));
    many.push_back(synthetic("B", i, {u(rng), u(rng), u(rng)}));
  }
  Summary base = aggregate(many);
  for (int rep = 0; rep < 10; ++rep) {
    std::shuffle(many.begin(), many.end(), rng);
    Summary s = aggregate(many);
    REQUIRE(s.rows.size() == base.rows.size());
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
      CHECK(s.rows[i].method == base.rows[i].method);
      CHECK(s.rows[i].mean == base.rows[i].mean);
      CHECK(s.rows[i].median == base.rows[i].median);
      CHECK(s.rows[i].ci_lo == base.rows[i].ci_lo);
      CHECK(s.rows[i].ci_hi == base.rows[i].ci_hi);
    }
  }
}
