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

#ifndef DBO_OBJECTIVES_HPP
#define DBO_OBJECTIVES_HPP

#include <string>
#include <vector>

#include "vendor_json.hpp"
#include "dbo/objective.hpp"

namespace dbo {

struct ObjectiveInfo {
  std::string name;
  std::string description;
  bool configurable_dim = false;
  std::size_t default_dim = 2;
};

const std::vector<ObjectiveInfo>& objective_registry();

// Builds a registered objective. Recognized params (all optional):
//   "dim"        dimension for ackley / rosenbrock
//   "noise_sd"   additive Gaussian noise, deterministic in x (default 0)
//   "noise_seed" seed for that noise
// and for "gp_sample": "kernel" (family), "lengthscale", "signal_variance",
// "rq_shape", "anchors", "dim", "seed".
// Unknown names or params throw ConfigError.
Objective get_objective(const std::string& name, const nlohmann::json& params = nlohmann::json::object());

// best_y - f_min, clamped at zero. Throws UnsupportedMetric when f_min is unknown.
double immediate_regret(const Objective& objective, double best_y);

}  // namespace dbo

#endif  // DBO_OBJECTIVES_HPP
