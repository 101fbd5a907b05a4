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

#ifndef DBO_TYPES_HPP
#define DBO_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace dbo {

using Point = std::vector<double>;

// Axis-aligned box [lo_j, hi_j] in R^d. Zero-width dimensions are allowed.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  Box() = default;
  Box(std::vector<double> lower, std::vector<double> upper);
  static Box unit(std::size_t dim);

  std::size_t dim() const { return lo.size(); }
  double width(std::size_t j) const { return hi[j] - lo[j]; }
  bool contains(std::span<const double> x) const;
  // Maps a point of the unit cube onto the box.
  Point from_unit(std::span<const double> u) const;
  Point clamp(std::span<const double> x) const;
};

// splitmix64 finalizer; used to derive independent streams from one seed.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(base);
  for (std::uint64_t p : parts) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
  return h;
}

}  // namespace dbo

#endif  // DBO_TYPES_HPP
