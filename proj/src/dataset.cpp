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

#include "dbo/dataset.hpp"

#include <cstring>
#include <string>

#include "dbo/error.hpp"

namespace dbo {
namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

}  // namespace

bool ObservationRecord::same_payload(const ObservationRecord& other) const {
  if (x.size() != other.x.size() || !same_bits(y, other.y)) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!same_bits(x[j], other.x[j])) return false;
  }
  return true;
}

bool Dataset::insert(const ObservationRecord& record) {
  if (!domain_.contains(record.x)) {
    throw InvalidArgument("record (" + std::to_string(record.node_id) + "," +
                          std::to_string(record.seq) + ") lies outside the domain");
  }
  auto [it, inserted] = records_.try_emplace(record.key(), record);
  if (inserted) return true;
  if (!it->second.same_payload(record)) {
    throw ProtocolViolation("conflicting payloads for record (" +
                                std::to_string(record.node_id) + "," +
                                std::to_string(record.seq) + ")",
                            record.node_id, record.seq);
  }
  return false;
}

const ObservationRecord* Dataset::find(const RecordKey& key) const {
  auto it = records_.find(key);
  return it == records_.end() ? nullptr : &it->second;
}

std::vector<Point> Dataset::inputs() const {
  std::vector<Point> out;
  out.reserve(records_.size());
  for (const auto& [key, rec] : records_) out.push_back(rec.x);
  return out;
}

std::vector<double> Dataset::targets() const {
  std::vector<double> out;
  out.reserve(records_.size());
  for (const auto& [key, rec] : records_) out.push_back(rec.y);
  return out;
}

std::optional<ObservationRecord> Dataset::best() const {
  const ObservationRecord* best = nullptr;
  for (const auto& [key, rec] : records_) {
    if (best == nullptr || rec.y < best->y) best = &rec;
  }
  if (best == nullptr) return std::nullopt;
  return *best;
}

std::map<std::uint64_t, std::uint64_t> Dataset::max_seq_by_node() const {
  std::map<std::uint64_t, std::uint64_t> out;
  for (const auto& [key, rec] : records_) out[key.node_id] = key.seq;
  return out;
}

}  // namespace dbo
