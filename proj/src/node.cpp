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

#include "dbo/node.hpp"

#include <string>

#include "dbo/error.hpp"

namespace dbo {

std::string_view to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kBoltzmann: return "boltzmann";
    case PolicyKind::kGreedy: return "greedy";
    case PolicyKind::kThompson: return "thompson";
  }
  return "unknown";
}

std::vector<Point> init_design(std::uint64_t node_id, std::size_t p, std::size_t dim,
                               const Box& domain, const std::vector<Point>& ld_table) {
  if (domain.dim() != dim) throw InvalidArgument("init_design: domain dimension mismatch");
  const std::size_t first = static_cast<std::size_t>(node_id) * p;
  if (first + p > ld_table.size()) {
    throw ConfigError("init_design: low-discrepancy table has " + std::to_string(ld_table.size()) +
                      " entries, node " + std::to_string(node_id) + " needs up to " +
                      std::to_string(first + p));
  }
  std::vector<Point> out;
  out.reserve(p);
  for (std::size_t i = first; i < first + p; ++i) {
    if (ld_table[i].size() != dim) throw ConfigError("init_design: table dimension mismatch");
    out.push_back(domain.from_unit(ld_table[i]));
  }
  return out;
}

Node::Node(NodeConfig config) : Node(std::move(config), false) {}

Node::Node(NodeConfig config, bool joined) : config_(std::move(config)), dataset_(config_.domain) {
  if (config_.domain.dim() == 0) throw ConfigError("node: empty domain");
  config_.policy.acquisition.validate();
  config_.policy.schedule.validate();
  config_.policy.mh.validate();
  kernel_ = config_.fit.initial.value_or(default_kernel(config_.family, config_.domain));
  kernel_.family = config_.family;
  noise_ = config_.fit.initial_noise;
  if (joined) {
    init_done_ = true;
    return;
  }
  if (!config_.ld_table) throw ConfigError("node: no low-discrepancy table for initialization");
  init_points_ = init_design(config_.node_id, config_.init_points(), config_.domain.dim(),
                             config_.domain, *config_.ld_table);
}

Node Node::join(std::span<const BroadcastMessage> history, NodeConfig config) {
  if (history.empty()) return Node(std::move(config));
  Node node(std::move(config), true);
  node.ingest(history);
  return node;
}

std::size_t Node::ingest(std::span<const BroadcastMessage> messages) {
  std::size_t fresh = 0;
  for (const BroadcastMessage& m : messages) {
    if (dataset_.insert(m.record)) ++fresh;
  }
  if (fresh > 0) stale_ = true;
  return fresh;
}

const GPModel& Node::refresh_model() {
  if (!stale_ && model_) return *model_;
  const std::size_t n = dataset_.size();
  const std::size_t d = config_.domain.dim();
  last_refit_ = false;
  last_fell_back_ = false;
  if (n >= 2 && !config_.fit.fixed) {
    bool due = !have_fit_ || n <= config_.refit_early_factor * d ||
               n - last_fit_size_ >= config_.refit_period;
    if (due) {
      FitConfig fc = config_.fit;
      fc.seed = derive_seed(config_.fit.seed, {static_cast<std::uint64_t>(n)});
      if (config_.warm_start && have_fit_) {
        fc.initial = kernel_;
        fc.initial_noise = noise_;
      }
      FitResult r = config_.fit_cache ? config_.fit_cache->fit(dataset_, config_.family, fc)
                                       : fit_hyperparameters(dataset_, config_.family, fc);
      kernel_ = r.kernel;
      noise_ = r.noise_variance;
      have_fit_ = true;
      last_refit_ = true;
      last_fell_back_ = r.fell_back;
      last_fit_size_ = n;
    }
  }
  model_ = std::make_shared<const GPModel>(kernel_, noise_, dataset_, config_.standardize);
  stale_ = false;
  return *model_;
}

Point Node::select(std::uint64_t seed, StepInfo& info) {
  const GPModel& model = refresh_model();
  info.refit = last_refit_;
  info.fit_fell_back = last_fell_back_;
  const PolicyConfig& pc = config_.policy;
  const std::size_t t = config_.local_t ? std::max<std::uint64_t>(seq_, 1) : std::max<std::size_t>(dataset_.size(), 1);
  info.t = t;
  const Incumbent inc = Incumbent::of(dataset_);
  const AcquisitionSpec acq = pc.acquisition.at_iteration(t);

  switch (pc.kind) {
    case PolicyKind::kGreedy:
      return greedy_argmax(model, acq, inc, config_.domain, pc.greedy, derive_seed(seed, {1}));
    case PolicyKind::kThompson:
      return thompson_select(model, config_.domain, pc.thompson_grid, derive_seed(seed, {2}));
    case PolicyKind::kBoltzmann: {
      double beta = pc.schedule.beta;
      if (pc.schedule.mode == ScheduleMode::kGlie) {
        info.range = acquisition_range(model, acq, inc, config_.domain, pc.schedule.grid_size,
                                       derive_seed(seed, {3}));
        beta = glie_beta(t, info.range);
      }
      info.beta = beta;
      BoltzmannDraw draw = boltzmann_sample(model, acq, inc, beta, config_.domain, pc.mh,
                                            derive_seed(seed, {4}));
      info.acceptance = draw.acceptance;
      info.low_acceptance = draw.low_acceptance;
      return draw.x;
    }
  }
  throw InvalidArgument("node: unknown policy");
}

std::optional<StepResult> Node::step(const Objective& objective, std::uint64_t seed) {
  if (exhausted()) return std::nullopt;
  StepResult out;
  Point x;
  if (in_init()) {
    out.info.init = true;
    x = init_points_[seq_];
  } else {
    init_done_ = true;
    x = select(seed, out.info);
  }
  double y = objective(x);
  ObservationRecord rec{config_.node_id, seq_, std::move(x), y};
  dataset_.insert(rec);
  stale_ = true;
  ++seq_;
  out.message.record = std::move(rec);
  return out;
}

std::optional<StepResult> Node::step(const Objective& objective) {
  return step(objective, derive_seed(config_.seed, {config_.node_id, seq_}));
}

}  // namespace dbo
