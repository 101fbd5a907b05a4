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

#ifndef DBO_ERROR_HPP
#define DBO_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dbo {

enum class ErrorCode {
  kInvalidArgument = 1,
  kConfig = 2,
  kNumericalFailure = 3,
  kProtocolViolation = 4,
  kUnsupportedMetric = 5,
  kIo = 6,
  kBudgetExhausted = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorCode::kConfig, what) {}
};

// Raised when a Cholesky factorization still fails at the largest jitter.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double last_jitter)
      : Error(ErrorCode::kNumericalFailure, what), last_jitter_(last_jitter) {}
  double last_jitter() const noexcept { return last_jitter_; }

 private:
  double last_jitter_;
};

// Two records share a (node_id, seq) key but carry different payloads.
class ProtocolViolation : public Error {
 public:
  ProtocolViolation(const std::string& what, std::uint64_t node_id,
                    std::uint64_t seq)
      : Error(ErrorCode::kProtocolViolation, what), node_id_(node_id), seq_(seq) {}
  std::uint64_t node_id() const noexcept { return node_id_; }
  std::uint64_t seq() const noexcept { return seq_; }

 private:
  std::uint64_t node_id_;
  std::uint64_t seq_;
};

class UnsupportedMetric : public Error {
 public:
  explicit UnsupportedMetric(const std::string& what)
      : Error(ErrorCode::kUnsupportedMetric, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(const std::string& what)
      : Error(ErrorCode::kBudgetExhausted, what) {}
};

}  // namespace dbo

#endif  // DBO_ERROR_HPP
