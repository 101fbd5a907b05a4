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

#ifndef DBO_NODE_HPP
#define DBO_NODE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dbo/acquisition.hpp"
#include "dbo/dataset.hpp"
#include "dbo/gp.hpp"
#include "dbo/hyperfit.hpp"
#include "dbo/objective.hpp"
#include "dbo/policy.hpp"

namespace dbo {

// The only thing nodes ever exchange: one record, O(d) bytes.
struct BroadcastMessage {
  ObservationRecord record;
};

enum class PolicyKind { kBoltzmann, kGreedy, kThompson };

std::string_view to_string(PolicyKind kind);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::kBoltzmann;
  AcquisitionSpec acquisition;
  TemperatureSchedule schedule;
  MHConfig mh;
  GreedyConfig greedy{8, 256, 400};  // kGreedy
  std::size_t thompson_grid = 512;   // kThompson
};

struct NodeConfig {
  std::uint64_t node_id = 0;
  Box domain;
  PolicyConfig policy;
  KernelFamily family = KernelFamily::kMatern52;
  FitConfig fit;
  bool warm_start = true;           // start the fit from the last hyperparameters
  std::size_t refit_early_factor = 20;  // refit on every update while n <= factor * d
  std::size_t refit_period = 5;         // afterwards once `period` new records arrived
  bool standardize = true;
  std::size_t p = 0;       // initialization points; 0 means 2d + 2
  std::size_t budget = 0;  // local evaluations including initialization
  bool local_t = false;    // GLIE t from local evaluations instead of known records
  std::uint64_t seed = 0;  // base of the node's random stream
  // Shared unit-cube low-discrepancy table; node k reads [k p, (k+1) p).
  std::shared_ptr<const std::vector<Point>> ld_table;
  // Optional memo shared by a fleet; results are unchanged by it.
  std::shared_ptr<FitCache> fit_cache;

  std::size_t init_points() const { return p > 0 ? p : 2 * domain.dim() + 2; }
};

// Node k's slice [k p, (k+1) p) of the table, mapped onto the domain.
std::vector<Point> init_design(std::uint64_t node_id, std::size_t p, std::size_t dim,
                               const Box& domain, const std::vector<Point>& ld_table);

struct StepInfo {
  bool init = false;
  bool refit = false;
  bool fit_fell_back = false;
  std::size_t t = 0;
  double beta = 0.0;
  double range = 0.0;
  double acceptance = 1.0;
  bool low_acceptance = false;
};

struct StepResult {
  BroadcastMessage message;
  StepInfo info;
};

// One BO-NODE agent. Its behaviour depends only on its config, its seed and
// the records it has received.
class Node {
 public:
  explicit Node(NodeConfig config);

  // A node spun up mid-run from the messages broadcast so far. With an empty
  // history it starts with its low-discrepancy initialization like any node.
  static Node join(std::span<const BroadcastMessage> history, NodeConfig config);

  // Inserts records with set semantics; returns how many were new.
  std::size_t ingest(std::span<const BroadcastMessage> messages);

  // Evaluates the next query (initialization point or policy selection) and
  // returns the outgoing broadcast; nullopt once the budget is spent.
  std::optional<StepResult> step(const Objective& objective, std::uint64_t seed);
  std::optional<StepResult> step(const Objective& objective);

  // Brings the surrogate up to date with the dataset (refit per cadence).
  const GPModel& refresh_model();

  bool exhausted() const { return seq_ >= config_.budget; }
  bool in_init() const { return !init_done_ && seq_ < init_points_.size(); }
  std::uint64_t id() const { return config_.node_id; }
  std::uint64_t seq() const { return seq_; }
  std::size_t known() const { return dataset_.size(); }
  const Dataset& dataset() const { return dataset_; }
  const NodeConfig& config() const { return config_; }
  const KernelSpec& kernel() const { return kernel_; }
  double noise_variance() const { return noise_; }
  // Current model, or null when records arrived since the last refresh.
  std::shared_ptr<const GPModel> model() const { return stale_ ? nullptr : model_; }

 private:
  Node(NodeConfig config, bool joined);
  Point select(std::uint64_t seed, StepInfo& info);

  NodeConfig config_;
  Dataset dataset_;
  std::vector<Point> init_points_;
  bool init_done_ = false;
  std::uint64_t seq_ = 0;
  KernelSpec kernel_;
  double noise_ = 0.0;
  bool have_fit_ = false;
  std::size_t last_fit_size_ = 0;
  bool stale_ = true;
  bool last_refit_ = false;
  bool last_fell_back_ = false;
  std::shared_ptr<const GPModel> model_;
};

}  // namespace dbo

#endif  // DBO_NODE_HPP
