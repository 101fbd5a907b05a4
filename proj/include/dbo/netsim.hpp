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

#ifndef DBO_NETSIM_HPP
#define DBO_NETSIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dbo/node.hpp"
#include "dbo/objective.hpp"

namespace dbo {

enum class NetworkMode { kSyncBatch, kAsync };

struct TickRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
};

struct NetworkConfig {
  NetworkMode mode = NetworkMode::kSyncBatch;
  TickRange latency{1, 3};     // kAsync, per delivery
  TickRange eval_ticks{1, 1};  // kAsync, per evaluation
  double drop_prob = 0.0;      // kAsync, per delivery
  std::uint64_t seed = 0;
  // Every envelope carries the sender's highest known seq per origin;
  // receivers request the gaps from the sender. Idle nodes announce their
  // summary every heartbeat_ticks so losses are eventually repaired.
  bool piggyback = true;
  std::int64_t heartbeat_ticks = 4;
  std::int64_t max_drain_ticks = 1'000'000;
  // SyncBatch only: step the nodes of a round on separate threads.
  bool parallel = false;

  void validate() const;
};

struct JoinEvent {
  std::int64_t tick = 0;  // round index in SyncBatch mode
  NodeConfig config;
};

struct TraceRecord {
  std::size_t global_index = 0;
  std::int64_t tick = 0;
  std::uint64_t node_id = 0;
  std::uint64_t seq = 0;
  Point x;
  double y = 0.0;
};

struct RunTrace {
  std::vector<TraceRecord> records;  // ordered by simulated completion time
  std::vector<std::pair<std::int64_t, std::uint64_t>> joins;
  std::size_t low_acceptance_steps = 0;
  std::size_t fit_fallbacks = 0;
  std::size_t dropped_messages = 0;
  std::size_t repair_messages = 0;
  std::int64_t final_tick = 0;
  std::vector<std::string> flags;
};

struct RunResult {
  RunTrace trace;
  std::vector<Node> nodes;
};

// Drives the nodes until `budget` evaluations (global, initialization
// included) are done or every node is exhausted. ProtocolViolation from any
// node aborts the run. Deterministic given config.seed.
RunResult run(std::vector<Node> nodes, const Objective& objective, const NetworkConfig& config,
              std::size_t budget, std::vector<JoinEvent> joins = {});

struct ConsistencyReport {
  std::vector<std::pair<std::uint64_t, std::size_t>> missing;  // (node_id, count)
  bool consistent() const;
};

// Records of the trace each node has not received.
ConsistencyReport quiesce(const RunTrace& trace, const std::vector<Node>& nodes);

}  // namespace dbo

#endif  // DBO_NETSIM_HPP
