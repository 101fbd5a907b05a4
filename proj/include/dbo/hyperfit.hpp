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

#ifndef DBO_HYPERFIT_HPP
#define DBO_HYPERFIT_HPP

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "dbo/dataset.hpp"
#include "dbo/kernel.hpp"

namespace dbo {

// Log evidence -1/2 y'K^-1 y - 1/2 log|K| - n/2 log(2 pi) with
// K = gram + noise I. Targets are used as given unless `standardize` is set,
// in which case they are standardized the same way GPModel does.
double log_marginal_likelihood(const KernelSpec& kernel, double noise_variance,
                               const Dataset& data, bool standardize = false);
double log_marginal_likelihood(const KernelSpec& kernel, double noise_variance,
                               const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

struct FitConfig {
  bool fixed = false;       // return the configured hyperparameters as they are
  bool ard = true;          // one lengthscale per dimension, else tied
  bool standardize = true;  // fit on standardized targets
  int starts = 8;           // first start is the warm start (or the default)
  int evals_per_start = 100;
  std::uint64_t seed = 0;
  // Search box, relative to the domain width (lengthscales) and to the
  // standardized target variance (signal and noise).
  double lengthscale_lo = 1e-3, lengthscale_hi = 1e3;
  double signal_lo = 1e-3, signal_hi = 1e3;
  double noise_lo = 1e-3, noise_hi = 1e3;
  // Used when fixed, as the warm start, and as the fallback.
  std::optional<KernelSpec> initial;
  double initial_noise = 1e-6;
};

struct FitResult {
  KernelSpec kernel;
  double noise_variance = 0.0;
  double log_likelihood = 0.0;
  int evaluations = 0;
  bool fell_back = false;  // every start failed numerically
};

// Conventional default: lengthscale a quarter of the domain width per
// dimension, unit signal variance.
KernelSpec default_kernel(KernelFamily family, const Box& domain);

// Maximizes the log marginal likelihood over log-lengthscales, log signal
// variance and log noise by multistart coordinate ascent with golden-section
// line searches. Deterministic given config.seed and the record set.
FitResult fit_hyperparameters(const Dataset& data, KernelFamily family,
                              const FitConfig& config);

// Memo table for fit_hyperparameters keyed on every input (records,
// family and the full config). Nodes of a fleet that hold the same records
// share fits through it without changing any result. Thread safe.
class FitCache {
 public:
  FitResult fit(const Dataset& data, KernelFamily family, const FitConfig& config);
  std::size_t hits() const;
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, FitResult> table_;
  std::size_t hits_ = 0;
};

}  // namespace dbo

#endif  // DBO_HYPERFIT_HPP
