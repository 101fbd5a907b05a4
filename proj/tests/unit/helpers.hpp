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

#ifndef DBO_TESTS_HELPERS_HPP
#define DBO_TESTS_HELPERS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "dbo/dataset.hpp"
#include "dbo/gp.hpp"
#include "dbo/kernel.hpp"
#include "oracles.hpp"

namespace testing {

inline dbo::Dataset make_data(const dbo::Box& box, const std::vector<dbo::Point>& X,
                              const std::vector<double>& y, std::uint64_t node = 0) {
  dbo::Dataset data(box);
  for (std::size_t i = 0; i < X.size(); ++i) data.insert({node, i, X[i], y[i]});
  return data;
}

inline dbo::KernelSpec make_kernel(dbo::KernelFamily family, std::vector<double> ls, double signal = 1.0) {
  dbo::KernelSpec k;
  k.family = family;
  k.lengthscales = std::move(ls);
  k.signal_variance = signal;
  return k;
}

inline std::vector<dbo::Point> uniform_points(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<dbo::Point> X(n, dbo::Point(d));
  for (auto& x : X)
    for (double& v : x) v = u(rng);
  return X;
}

// Five noise-free observations of a smooth 1-d function on [0, 1].
inline dbo::GPModel five_point_model(double lengthscale = 0.2) {
  const dbo::Box box({0.0}, {1.0});
  std::vector<dbo::Point> X{{0.05}, {0.3}, {0.5}, {0.72}, {0.95}};
  std::vector<double> y;
  for (const auto& x : X) y.push_back(std::sin(6.0 * x[0]) + 0.5 * x[0]);
  return dbo::GPModel(make_kernel(dbo::KernelFamily::kMatern52, {lengthscale}), 1e-6, make_data(box, X, y));
}

inline const char* family_name(dbo::KernelFamily f) {
  switch (f) {
    case dbo::KernelFamily::kMatern12: return "matern12";
    case dbo::KernelFamily::kMatern32: return "matern32";
    case dbo::KernelFamily::kMatern52: return "matern52";
    case dbo::KernelFamily::kSquaredExponential: return "se";
    case dbo::KernelFamily::kRationalQuadratic: return "rq";
  }
  return "";
}

inline constexpr dbo::KernelFamily kFamilies[] = {
    dbo::KernelFamily::kMatern12, dbo::KernelFamily::kMatern32, dbo::KernelFamily::kMatern52,
    dbo::KernelFamily::kSquaredExponential, dbo::KernelFamily::kRationalQuadratic};

inline oracle::Problem to_problem(dbo::KernelFamily family, const std::vector<dbo::Point>& X,
                                  const std::vector<double>& y, const std::vector<double>& ls,
                                  double signal, double noise, double rq_shape = 1.0) {
  oracle::Problem p;
  p.family = family_name(family);
  p.X = X;
  p.y = y;
  p.lengthscales = ls;
  p.signal = signal;
  p.noise = noise;
  p.rq_shape = rq_shape;
  return p;
}

}  // namespace testing

#endif  // DBO_TESTS_HELPERS_HPP
