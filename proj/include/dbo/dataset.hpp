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

#ifndef DBO_DATASET_HPP
#define DBO_DATASET_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dbo/types.hpp"

namespace dbo {

struct RecordKey {
  std::uint64_t node_id = 0;
  std::uint64_t seq = 0;
  auto operator<=>(const RecordKey&) const = default;
};

// One evaluated query. (node_id, seq) is the identity of the record.
struct ObservationRecord {
  std::uint64_t node_id = 0;
  std::uint64_t seq = 0;
  Point x;
  double y = 0.0;

  RecordKey key() const { return {node_id, seq}; }
  // Bitwise payload equality; NaN payloads compare by bits as well.
  bool same_payload(const ObservationRecord& other) const;
};

// Set of records keyed by (node_id, seq). Iteration is always in canonical
// key order, so every quantity derived from a Dataset is independent of the
// order in which records were inserted.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(Box domain) : domain_(std::move(domain)) {}

  const Box& domain() const { return domain_; }
  std::size_t dim() const { return domain_.dim(); }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  // Returns true when the record was new. An identical duplicate is a no-op;
  // a conflicting duplicate throws ProtocolViolation. Points outside the
  // domain throw InvalidArgument.
  bool insert(const ObservationRecord& record);
  bool contains(const RecordKey& key) const { return records_.count(key) != 0; }
  const ObservationRecord* find(const RecordKey& key) const;

  auto begin() const { return records_.begin(); }
  auto end() const { return records_.end(); }

  std::vector<Point> inputs() const;
  std::vector<double> targets() const;
  // Best (lowest) record; ties resolved by canonical order.
  std::optional<ObservationRecord> best() const;
  // Highest seq known per origin node, for gap detection.
  std::map<std::uint64_t, std::uint64_t> max_seq_by_node() const;

 private:
  Box domain_;
  std::map<RecordKey, ObservationRecord> records_;
};

}  // namespace dbo

#endif  // DBO_DATASET_HPP
