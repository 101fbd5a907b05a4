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

#include <set>

#include <doctest.h>

#include "dbo/lowdisc.hpp"

using namespace dbo;

TEST_CASE("sobol: first point is the midpoint") {
  for (std::size_t d : {1u, 2u, 6u}) {
    auto pts = sobol_points(1, d);
    REQUIRE(pts.size() == 1);
    for (double v : pts[0]) CHECK(v == 0.5);
  }
  auto in_box = sobol_points_in(Box({-5.0, 0.0}, {10.0, 15.0}), 1);
  CHECK(in_box[0] == Point{2.5, 7.5});
}

TEST_CASE("sobol: prefixes are nested, shifted or not") {
  for (auto shift : {std::optional<std::uint64_t>{}, std::optional<std::uint64_t>{42}}) {
    auto longer = sobol_points(200, 3, shift);
    auto shorter = sobol_points(37, 3, shift);
    for (std::size_t i = 0; i < shorter.size(); ++i) CHECK(shorter[i] == longer[i]);
  }
}

TEST_CASE("sobol: points are distinct, inside the cube, and well spread") {
  auto pts = sobol_points(256, 2);
  std::set<Point> unique(pts.begin(), pts.end());
  CHECK(unique.size() == pts.size());
  for (const auto& p : pts) {
    for (double v : p) {
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
    }
  }
  // 255 of the first 256 points (origin skipped) fill every cell of a 16x16 grid but one.
  std::set<std::pair<int, int>> cells;
  for (const auto& p : pts) cells.insert({static_cast<int>(p[0] * 16), static_cast<int>(p[1] * 16)});
  CHECK(cells.size() >= 255);

  auto shifted = sobol_points(64, 2, 7);
  for (const auto& p : shifted) {
    for (double v : p) {
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
    }
  }
  CHECK(shifted[0] != pts[0]);
}
