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

#ifndef DBO_LOWDISC_HPP
#define DBO_LOWDISC_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dbo/types.hpp"

namespace dbo {

// First `count` points of the d-dimensional Sobol sequence (Joe-Kuo direction
// numbers, origin skipped, so the first point is (0.5, ..., 0.5)).
//
// With a shift seed the whole table receives one Cranley-Patterson rotation
// u -> frac(u + s). Prefixes stay nested: the first n points of a longer
// table equal the n-point table for the same seed.
std::vector<Point> sobol_points(std::size_t count, std::size_t dim,
                                std::optional<std::uint64_t> shift_seed = {});

// Same as sobol_points, mapped onto `box`.
std::vector<Point> sobol_points_in(const Box& box, std::size_t count,
                                   std::optional<std::uint64_t> shift_seed = {});

}  // namespace dbo

#endif  // DBO_LOWDISC_HPP
