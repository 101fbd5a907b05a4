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

#include "dbo/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <boost/math/distributions/students_t.hpp>

#include "dbo/error.hpp"
#include "dbo/lowdisc.hpp"
#include "dbo/netsim.hpp"
#include "dbo/objectives.hpp"

namespace dbo {

namespace {

constexpr std::uint64_t kTableStream = 1;
constexpr std::uint64_t kNodeStream = 2;
constexpr std::uint64_t kFitStream = 3;
constexpr std::uint64_t kNetworkStream = 4;
constexpr std::uint64_t kObjectiveStream = 5;

PolicyConfig method_policy(const ExperimentConfig& c, Method m) {
  PolicyConfig pc;
  pc.acquisition = c.acquisition;
  pc.schedule = c.schedule;
  pc.mh = c.mh;
  pc.greedy = c.greedy;
  pc.thompson_grid = c.thompson_grid;
  switch (m) {
    case Method::kSPEI:
      pc.kind = PolicyKind::kBoltzmann;
      pc.acquisition.kind = AcquisitionKind::kEI;
      break;
    case Method::kSPPI:
      pc.kind = PolicyKind::kBoltzmann;
      pc.acquisition.kind = AcquisitionKind::kPI;
      break;
    case Method::kSPUCB:
      pc.kind = PolicyKind::kBoltzmann;
      pc.acquisition.kind = AcquisitionKind::kUCB;
      break;
    case Method::kPDTS:
      pc.kind = PolicyKind::kThompson;
      break;
    case Method::kSequentialEI:
      pc.kind = PolicyKind::kGreedy;
      pc.acquisition.kind = AcquisitionKind::kEI;
      break;
  }
  return pc;
}

std::size_t init_per_node(const ExperimentConfig& c, std::size_t dim) { return c.p > 0 ? c.p : 2 * dim + 2; }

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) {
  return derive_seed(master, {static_cast<std::uint64_t>(trial)});
}

Objective trial_objective(const ExperimentConfig& config, std::size_t trial) {
  nlohmann::json params = config.objective_params;
  if (config.objective == "gp_sample" && !params.contains("seed")) {
    params["seed"] = derive_seed(trial_seed(config.seed, trial), {kObjectiveStream});
  }
  return get_objective(config.objective, params);
}

std::vector<NodeConfig> fleet_configs(const ExperimentConfig& config, const Objective& objective,
                                      std::size_t method, std::size_t trial) {
  const std::size_t dim = objective.dim;
  const std::uint64_t ts = trial_seed(config.seed, trial);
  const std::size_t p = init_per_node(config, dim);

  std::vector<PolicyConfig> policies;
  std::size_t node_p = p;
  if (config.fleet) {
    if (method != 0) throw InvalidArgument("fleet_configs: a fleet is a single method");
    for (const auto& g : config.fleet->groups) policies.insert(policies.end(), g.count, g.policy);
  } else {
    if (method >= config.methods.size()) throw InvalidArgument("fleet_configs: method index out of range");
    Method m = config.methods[method];
    if (m == Method::kSequentialEI) {
      // One node evaluating the union of the fleet's initial designs.
      policies.push_back(method_policy(config, m));
      node_p = p * config.n_nodes;
    } else {
      policies.assign(config.n_nodes, method_policy(config, m));
    }
  }
  const std::size_t fleet_size = config.fleet ? config.fleet->size() : config.n_nodes;

  // Same table for every method of the trial.
  auto table = std::make_shared<const std::vector<Point>>(
      sobol_points(p * fleet_size, dim, derive_seed(ts, {kTableStream})));
  auto cache = std::make_shared<FitCache>();

  FitConfig fit = config.fit;
  fit.standardize = config.standardize;
  fit.seed = derive_seed(ts, {kFitStream});
  if (fit.initial) {
    fit.initial->family = config.kernel;
    if (fit.initial->lengthscales.size() == 1 && dim > 1) {
      fit.initial->lengthscales.assign(dim, fit.initial->lengthscales.front());
    }
    if (fit.initial->lengthscales.size() != dim) {
      throw ConfigError("kernel: " + std::to_string(fit.initial->lengthscales.size()) +
                        " lengthscales for a " + std::to_string(dim) + "-d objective");
    }
  }

  std::vector<NodeConfig> out;
  for (std::size_t k = 0; k < policies.size(); ++k) {
    NodeConfig nc;
    nc.node_id = k;
    nc.domain = objective.bounds;
    nc.policy = policies[k];
    nc.family = config.kernel;
    nc.fit = fit;
    nc.warm_start = config.warm_start;
    nc.refit_early_factor = config.refit_early_factor;
    nc.refit_period = config.refit_period;
    nc.standardize = config.standardize;
    nc.p = node_p;
    nc.budget = node_p + config.budget;  // the global budget is enforced by the network
    nc.local_t = config.local_t;
    nc.seed = derive_seed(ts, {kNodeStream});
    nc.ld_table = table;
    nc.fit_cache = cache;
    out.push_back(std::move(nc));
  }
  return out;
}

RegretTrace run_trial(const ExperimentConfig& config, const Objective& objective, std::size_t method,
                      std::size_t trial) {
  std::vector<NodeConfig> configs = fleet_configs(config, objective, method, trial);
  std::vector<Node> nodes;
  std::size_t init_total = 0;
  for (auto& nc : configs) {
    init_total += nc.init_points();
    nodes.emplace_back(std::move(nc));
  }
  NetworkConfig net = config.network;
  net.mode = config.mode;
  net.seed = derive_seed(trial_seed(config.seed, trial), {kNetworkStream});
  RunResult run = dbo::run(std::move(nodes), objective, net, init_total + config.budget);

  RegretTrace trace;
  trace.method = config.method_names().at(method);
  trace.trial = trial;
  trace.init_count = init_total;
  trace.flags = run.trace.flags;
  double best = std::numeric_limits<double>::infinity();
  std::size_t index = 0;
  for (const TraceRecord& r : run.trace.records) {
    best = std::min(best, r.y);
    const bool init = r.seq < configs[r.node_id].init_points();
    if (config.post_init_index && init) continue;
    TraceRow row;
    row.eval_index = ++index;
    row.node_id = r.node_id;
    row.tick = r.tick;
    row.x = r.x;
    row.y = r.y;
    row.best_so_far = best;
    row.immediate_regret = objective.f_min ? immediate_regret(objective, best)
                                           : std::numeric_limits<double>::quiet_NaN();
    trace.rows.push_back(std::move(row));
  }
  return trace;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  const std::vector<std::string> names = config.method_names();
  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    Objective objective = trial_objective(config, trial);
    result.dim = objective.dim;
    result.regret_known = objective.f_min.has_value();
    for (std::size_t m = 0; m < names.size(); ++m) {
      try {
        result.traces.push_back(run_trial(config, objective, m, trial));
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        result.failures.push_back({names[m], trial, e.what()});
      }
    }
  }
  return result;
}

double ci_multiplier(CiMethod ci, std::size_t n) {
  if (ci == CiMethod::kNormal || n < 2) return 1.96;
  boost::math::students_t dist(static_cast<double>(n - 1));
  return boost::math::quantile(dist, 0.975);
}

Summary aggregate(const std::vector<RegretTrace>& traces, CiMethod ci, Metric metric) {
  Summary summary;
  if (metric == Metric::kAuto) {
    metric = Metric::kImmediateRegret;
    for (const auto& t : traces) {
      for (const auto& r : t.rows) {
        if (std::isnan(r.immediate_regret)) metric = Metric::kBestSoFar;
      }
    }
  }
  summary.metric = metric == Metric::kImmediateRegret ? "immediate_regret" : "best_so_far";

  std::map<std::pair<std::string, std::size_t>, std::vector<double>> cells;
  std::map<std::string, std::size_t> trials_per_method;
  for (const auto& t : traces) {
    ++trials_per_method[t.method];
    for (const auto& r : t.rows) {
      double v = metric == Metric::kImmediateRegret ? r.immediate_regret : r.best_so_far;
      if (std::isnan(v)) throw UnsupportedMetric("aggregate: immediate regret missing in trace of " + t.method);
      cells[{t.method, r.eval_index}].push_back(v);
    }
  }
  for (auto& [key, values] : cells) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    SummaryRow row;
    row.method = key.first;
    row.eval_index = key.second;
    row.n = n;
    row.mean = sum / static_cast<double>(n);
    row.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    if (n < 2) {
      row.ci_lo = row.ci_hi = row.mean;
    } else {
      double ss = 0.0;
      for (double v : values) ss += (v - row.mean) * (v - row.mean);
      const double sd = std::sqrt(ss / static_cast<double>(n - 1));
      const double half = ci_multiplier(ci, n) * sd / std::sqrt(static_cast<double>(n));
      row.ci_lo = row.mean - half;
      row.ci_hi = row.mean + half;
    }
    summary.rows.push_back(std::move(row));
  }
  for (const auto& [method, n] : trials_per_method) {
    if (n == 1) summary.flags.push_back("single_trial:" + method);
  }
  return summary;
}

}  // namespace dbo
