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

#ifndef DBO_OBJECTIVE_HPP
#define DBO_OBJECTIVE_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dbo/types.hpp"

namespace dbo {

// Deterministic black-box function on a box, minimized by the engine.
struct Objective {
  std::string name;
  std::size_t dim = 0;
  Box bounds;
  std::function<double(std::span<const double>)> eval;
  std::optional<double> f_min;
  std::vector<Point> x_min;

  double operator()(std::span<const double> x) const { return eval(x); }
};

}  // namespace dbo

#endif  // DBO_OBJECTIVE_HPP
