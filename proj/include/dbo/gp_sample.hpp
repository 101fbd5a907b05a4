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

#ifndef DBO_GP_SAMPLE_HPP
#define DBO_GP_SAMPLE_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "dbo/kernel.hpp"
#include "dbo/objective.hpp"

namespace dbo {

class GPModel;

// A random function drawn from a GP prior: one joint prior draw at
// `anchor_count` Sobol points of the box, interpolated by the noise-free
// posterior mean. f_min is unknown.
struct SampledFunction {
  Objective objective;
  std::vector<Point> anchors;
  std::vector<double> anchor_values;
  std::shared_ptr<const GPModel> interpolant;
};

SampledFunction sample_function(const KernelSpec& spec, const Box& domain,
                                std::size_t anchor_count, std::uint64_t seed);

inline Objective sample_objective(const KernelSpec& spec, const Box& domain,
                                  std::size_t anchor_count, std::uint64_t seed) {
  return sample_function(spec, domain, anchor_count, seed).objective;
}

}  // namespace dbo

#endif  // DBO_GP_SAMPLE_HPP
