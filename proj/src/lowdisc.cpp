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

#include "dbo/lowdisc.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <boost/random/sobol.hpp>

#include "dbo/error.hpp"

namespace dbo {

Box::Box(std::vector<double> lower, std::vector<double> upper)
    : lo(std::move(lower)), hi(std::move(upper)) {
  if (lo.size() != hi.size()) throw InvalidArgument("box bounds differ in dimension");
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (!(lo[j] <= hi[j])) throw InvalidArgument("box lower bound exceeds upper bound");
  }
}

Box Box::unit(std::size_t dim) {
  return Box(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

bool Box::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(x[j] >= lo[j] && x[j] <= hi[j])) return false;
  }
  return true;
}

Point Box::from_unit(std::span<const double> u) const {
  Point x(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    x[j] = lo[j] + u[j] * (hi[j] - lo[j]);
    if (x[j] > hi[j]) x[j] = hi[j];
  }
  return x;
}

Point Box::clamp(std::span<const double> x) const {
  Point c(x.begin(), x.end());
  for (std::size_t j = 0; j < dim(); ++j) c[j] = std::min(hi[j], std::max(lo[j], c[j]));
  return c;
}

std::vector<Point> sobol_points(std::size_t count, std::size_t dim,
                                std::optional<std::uint64_t> shift_seed) {
  if (dim == 0) throw InvalidArgument("sobol_points: dimension must be positive");
  std::vector<Point> out;
  out.reserve(count);
  boost::random::sobol engine(dim);
  constexpr double kScale = 5.42101086242752217e-20;  // 2^-64

  std::vector<double> shift(dim, 0.0);
  if (shift_seed) {
    std::mt19937_64 rng(*shift_seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (double& s : shift) s = u01(rng);
  }
  for (std::size_t i = 0; i < count; ++i) {
    Point u(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      double v = static_cast<double>(engine()) * kScale + shift[j];
      u[j] = v - std::floor(v);
    }
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<Point> sobol_points_in(const Box& box, std::size_t count,
                                   std::optional<std::uint64_t> shift_seed) {
  std::vector<Point> unit = sobol_points(count, box.dim(), shift_seed);
  for (Point& u : unit) u = box.from_unit(u);
  return unit;
}

}  // namespace dbo
