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

#include "dbo/netsim.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <thread>

#include "dbo/error.hpp"

namespace dbo {

void NetworkConfig::validate() const {
  if (!(drop_prob >= 0.0 && drop_prob < 1.0)) throw ConfigError("network: drop_prob must be in [0, 1)");
  if (latency.lo < 0 || latency.hi < latency.lo) throw ConfigError("network: bad latency range");
  if (eval_ticks.lo < 1 || eval_ticks.hi < eval_ticks.lo) throw ConfigError("network: bad evaluation ticks");
  if (heartbeat_ticks < 1) throw ConfigError("network: heartbeat_ticks must be positive");
}

bool ConsistencyReport::consistent() const {
  return std::all_of(missing.begin(), missing.end(), [](const auto& m) { return m.second == 0; });
}

ConsistencyReport quiesce(const RunTrace& trace, const std::vector<Node>& nodes) {
  ConsistencyReport report;
  for (const Node& node : nodes) {
    std::size_t missing = 0;
    for (const TraceRecord& r : trace.records) {
      if (!node.dataset().contains({r.node_id, r.seq})) ++missing;
    }
    report.missing.emplace_back(node.id(), missing);
  }
  return report;
}

namespace {

void note_step(RunTrace& trace, const StepResult& step) {
  if (step.info.low_acceptance) ++trace.low_acceptance_steps;
  if (step.info.fit_fell_back) ++trace.fit_fallbacks;
}

TraceRecord to_trace(std::size_t index, std::int64_t tick, const ObservationRecord& rec) {
  return {index, tick, rec.node_id, rec.seq, rec.x, rec.y};
}

std::size_t pending_init(const std::vector<Node>& nodes) {
  std::size_t total = 0;
  for (const Node& n : nodes) {
    if (n.in_init()) total += n.config().init_points() - n.seq();
  }
  return total;
}

void finish_flags(RunTrace& trace) {
  if (trace.low_acceptance_steps > 0) {
    trace.flags.push_back("low_acceptance_steps=" + std::to_string(trace.low_acceptance_steps));
  }
  if (trace.fit_fallbacks > 0) {
    trace.flags.push_back("fit_fallbacks=" + std::to_string(trace.fit_fallbacks));
  }
}

RunResult run_sync(std::vector<Node> nodes, const Objective& objective, const NetworkConfig& config,
                   std::size_t budget, std::vector<JoinEvent> joins) {
  RunResult out;
  std::vector<BroadcastMessage> history;
  std::stable_sort(joins.begin(), joins.end(),
                   [](const JoinEvent& a, const JoinEvent& b) { return a.tick < b.tick; });
  std::size_t next_join = 0;
  std::size_t total = 0;
  for (std::int64_t round = 0; total < budget; ++round) {
    while (next_join < joins.size() && joins[next_join].tick <= round) {
      nodes.push_back(Node::join(history, joins[next_join].config));
      out.trace.joins.emplace_back(round, joins[next_join].config.node_id);
      ++next_join;
    }
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].exhausted()) active.push_back(i);
    }
    std::stable_sort(active.begin(), active.end(),
                     [&](std::size_t a, std::size_t b) { return nodes[a].id() < nodes[b].id(); });
    if (active.size() > budget - total) active.resize(budget - total);
    if (active.empty()) {
      if (next_join < joins.size()) continue;
      break;
    }

    std::vector<std::optional<StepResult>> results(active.size());
    if (config.parallel && active.size() > 1) {
      std::vector<std::exception_ptr> errors(active.size());
      std::vector<std::thread> workers;
      for (std::size_t k = 0; k < active.size(); ++k) {
        workers.emplace_back([&, k] {
          try {
            results[k] = nodes[active[k]].step(objective);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        });
      }
      for (auto& w : workers) w.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    } else {
      for (std::size_t k = 0; k < active.size(); ++k) results[k] = nodes[active[k]].step(objective);
    }

    std::vector<BroadcastMessage> round_msgs;
    for (auto& r : results) {
      if (!r) continue;
      note_step(out.trace, *r);
      out.trace.records.push_back(to_trace(total++, round, r->message.record));
      round_msgs.push_back(r->message);
    }
    for (Node& n : nodes) n.ingest(round_msgs);
    history.insert(history.end(), round_msgs.begin(), round_msgs.end());
    out.trace.final_tick = round;
  }
  finish_flags(out.trace);
  out.nodes = std::move(nodes);
  return out;
}

// ---------------------------------------------------------------------------
// Asynchronous discrete-event mode.

using Summary = std::map<std::uint64_t, std::uint64_t>;

enum class EventKind { kReady, kComplete, kDeliver, kGapRequest, kHeartbeat, kJoin };

struct Event {
  std::int64_t tick = 0;
  std::uint64_t order = 0;
  EventKind kind = EventKind::kReady;
  std::size_t target = 0;  // node index (or join index)
  std::size_t source = 0;
  std::vector<ObservationRecord> records;
  Summary summary;
  std::vector<RecordKey> keys;
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    return a.tick != b.tick ? a.tick > b.tick : a.order > b.order;
  }
};

class AsyncSim {
 public:
  AsyncSim(std::vector<Node> nodes, const Objective& objective, const NetworkConfig& config,
           std::size_t budget, std::vector<JoinEvent> joins)
      : nodes_(std::move(nodes)), objective_(objective), config_(config), budget_(budget),
        joins_(std::move(joins)), rng_(config.seed) {}

  RunResult run() {
    for (std::size_t i = 0; i < nodes_.size(); ++i) add_node(i, 0);
    for (std::size_t j = 0; j < joins_.size(); ++j) {
      Event e;
      e.tick = joins_[j].tick;
      e.kind = EventKind::kJoin;
      e.target = j;
      push(std::move(e));
    }
    std::int64_t done_tick = -1;
    while (!queue_.empty()) {
      Event e = queue_.top();
      queue_.pop();
      now_ = e.tick;
      if (evaluations_done()) {
        if (done_tick < 0) done_tick = now_;
        if (all_consistent() || !config_.piggyback || now_ - done_tick > config_.max_drain_ticks) break;
      }
      handle(e);
    }
    if (!all_consistent()) trace_.flags.push_back("not_drained");
    trace_.final_tick = now_;
    finish_flags(trace_);
    return {std::move(trace_), std::move(nodes_)};
  }

 private:
  std::int64_t draw(const TickRange& r) {
    if (r.hi == r.lo) return r.lo;
    return std::uniform_int_distribution<std::int64_t>(r.lo, r.hi)(rng_);
  }
  bool dropped() {
    if (config_.drop_prob <= 0.0) return false;
    bool d = std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < config_.drop_prob;
    if (d) ++trace_.dropped_messages;
    return d;
  }
  void push(Event e) {
    e.order = order_++;
    queue_.push(std::move(e));
  }

  void add_node(std::size_t index, std::int64_t tick) {
    if (finished_.size() <= index) finished_.resize(index + 1, false);
    Event ready;
    ready.tick = tick;
    ready.kind = EventKind::kReady;
    ready.target = index;
    push(std::move(ready));
    if (config_.piggyback) schedule_heartbeat(index, tick + 1 + static_cast<std::int64_t>(index) % config_.heartbeat_ticks);
  }

  void schedule_heartbeat(std::size_t index, std::int64_t tick) {
    Event hb;
    hb.tick = tick;
    hb.kind = EventKind::kHeartbeat;
    hb.target = index;
    push(std::move(hb));
  }

  bool evaluations_done() const {
    if (in_flight_ > 0) return false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!finished_[i]) return false;
    }
    return next_join_pending() == false;
  }
  bool next_join_pending() const { return joined_ < joins_.size(); }

  bool all_consistent() const {
    for (const Node& n : nodes_) {
      if (n.known() != global_.size()) return false;
    }
    return true;
  }

  void send(std::size_t from, std::size_t to, std::vector<ObservationRecord> records) {
    if (from == to || dropped()) return;
    Event e;
    e.tick = now_ + draw(config_.latency);
    e.kind = EventKind::kDeliver;
    e.target = to;
    e.source = from;
    e.records = std::move(records);
    if (config_.piggyback) e.summary = nodes_[from].dataset().max_seq_by_node();
    push(std::move(e));
  }

  void ingest(std::size_t index, const std::vector<ObservationRecord>& records) {
    std::vector<BroadcastMessage> msgs;
    msgs.reserve(records.size());
    for (const auto& r : records) msgs.push_back({r});
    nodes_[index].ingest(msgs);
  }

  void handle(const Event& e) {
    switch (e.kind) {
      case EventKind::kJoin: {
        std::vector<BroadcastMessage> history;
        for (const auto& [key, rec] : global_) history.push_back({rec});
        nodes_.push_back(Node::join(history, joins_[e.target].config));
        trace_.joins.emplace_back(now_, joins_[e.target].config.node_id);
        ++joined_;
        add_node(nodes_.size() - 1, now_);
        break;
      }
      case EventKind::kReady: {
        std::size_t i = e.target;
        auto pending = std::move(inbox_[i]);
        inbox_.erase(i);
        ingest(i, pending);
        if (nodes_[i].exhausted() || started_ >= budget_) {
          finished_[i] = true;
          break;
        }
        std::optional<StepResult> r = nodes_[i].step(objective_);
        if (!r) {
          finished_[i] = true;
          break;
        }
        note_step(trace_, *r);
        ++started_;
        ++in_flight_;
        Event done;
        done.tick = now_ + draw(config_.eval_ticks);
        done.kind = EventKind::kComplete;
        done.target = i;
        done.records.push_back(std::move(r->message.record));
        push(std::move(done));
        break;
      }
      case EventKind::kComplete: {
        std::size_t i = e.target;
        --in_flight_;
        const ObservationRecord& rec = e.records.front();
        global_.emplace(rec.key(), rec);
        trace_.records.push_back(to_trace(trace_.records.size(), now_, rec));
        for (std::size_t peer = 0; peer < nodes_.size(); ++peer) send(i, peer, e.records);
        Event ready;
        ready.tick = now_;
        ready.kind = EventKind::kReady;
        ready.target = i;
        push(std::move(ready));
        break;
      }
      case EventKind::kDeliver: {
        std::size_t i = e.target;
        if (finished_[i]) {
          ingest(i, e.records);
        } else {
          auto& box = inbox_[i];
          box.insert(box.end(), e.records.begin(), e.records.end());
        }
        if (config_.piggyback) request_gaps(i, e.source, e.summary);
        break;
      }
      case EventKind::kGapRequest: {
        // e.target holds the records; e.source asked for them.
        std::vector<ObservationRecord> repair;
        for (const RecordKey& k : e.keys) {
          if (const ObservationRecord* r = nodes_[e.target].dataset().find(k)) repair.push_back(*r);
        }
        if (!repair.empty()) {
          ++trace_.repair_messages;
          send(e.target, e.source, std::move(repair));
        }
        break;
      }
      case EventKind::kHeartbeat: {
        std::size_t i = e.target;
        for (std::size_t peer = 0; peer < nodes_.size(); ++peer) send(i, peer, {});
        schedule_heartbeat(i, now_ + config_.heartbeat_ticks);
        break;
      }
    }
  }

  // Asks `sender` for every record up to its advertised maxima that `receiver`
  // neither holds nor has waiting in its inbox.
  void request_gaps(std::size_t receiver, std::size_t sender, const Summary& summary) {
    if (receiver == sender) return;
    const Dataset& have = nodes_[receiver].dataset();
    std::vector<RecordKey> waiting;
    if (auto it = inbox_.find(receiver); it != inbox_.end()) {
      for (const auto& r : it->second) waiting.push_back(r.key());
    }
    std::sort(waiting.begin(), waiting.end());
    std::vector<RecordKey> missing;
    for (const auto& [origin, max_seq] : summary) {
      for (std::uint64_t s = 0; s <= max_seq; ++s) {
        RecordKey k{origin, s};
        if (!have.contains(k) && !std::binary_search(waiting.begin(), waiting.end(), k)) {
          missing.push_back(k);
        }
      }
    }
    if (missing.empty() || dropped()) return;
    Event req;
    req.tick = now_ + draw(config_.latency);
    req.kind = EventKind::kGapRequest;
    req.target = sender;
    req.source = receiver;
    req.keys = std::move(missing);
    push(std::move(req));
  }

  std::vector<Node> nodes_;
  const Objective& objective_;
  NetworkConfig config_;
  std::size_t budget_;
  std::vector<JoinEvent> joins_;
  std::mt19937_64 rng_;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::uint64_t order_ = 0;
  std::int64_t now_ = 0;
  std::size_t started_ = 0;
  std::size_t in_flight_ = 0;
  std::size_t joined_ = 0;
  std::vector<bool> finished_;
  std::map<std::size_t, std::vector<ObservationRecord>> inbox_;
  std::map<RecordKey, ObservationRecord> global_;
  RunTrace trace_;
};

}  // namespace

RunResult run(std::vector<Node> nodes, const Objective& objective, const NetworkConfig& config,
              std::size_t budget, std::vector<JoinEvent> joins) {
  config.validate();
  if (nodes.empty() && joins.empty()) throw InvalidArgument("run: no nodes");
  if (budget < pending_init(nodes)) {
    throw InvalidArgument("run: budget " + std::to_string(budget) +
                          " is smaller than the initialization points of the fleet");
  }
  if (config.mode == NetworkMode::kSyncBatch) {
    return run_sync(std::move(nodes), objective, config, budget, std::move(joins));
  }
  return AsyncSim(std::move(nodes), objective, config, budget, std::move(joins)).run();
}

}  // namespace dbo
