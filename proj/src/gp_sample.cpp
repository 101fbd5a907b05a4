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

#include "dbo/gp_sample.hpp"

#include <random>

#include "dbo/dataset.hpp"
#include "dbo/error.hpp"
#include "dbo/gp.hpp"
#include "dbo/lowdisc.hpp"

namespace dbo {

SampledFunction sample_function(const KernelSpec& spec, const Box& domain,
                                std::size_t anchor_count, std::uint64_t seed) {
  spec.validate();
  if (anchor_count < 1) throw InvalidArgument("sample_objective: need at least one anchor");
  if (spec.dim() != domain.dim()) throw InvalidArgument("sample_objective: dimension mismatch");

  SampledFunction out;
  out.anchors = sobol_points_in(domain, anchor_count);
  Eigen::MatrixXd X = to_matrix(out.anchors, domain.dim());
  GramFactor f = factorize_gram(spec, X, 0.0, 0.0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(static_cast<Eigen::Index>(anchor_count));
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
  Eigen::VectorXd values = f.lower.triangularView<Eigen::Lower>() * z;
  out.anchor_values.assign(values.data(), values.data() + values.size());

  Dataset data(domain);
  for (std::size_t i = 0; i < anchor_count; ++i) {
    data.insert({0, static_cast<std::uint64_t>(i), out.anchors[i], out.anchor_values[i]});
  }
  auto model = std::make_shared<const GPModel>(spec, 0.0, data, /*standardize=*/false);
  out.interpolant = model;

  out.objective.name = "gp_sample";
  out.objective.dim = domain.dim();
  out.objective.bounds = domain;
  out.objective.eval = [model](std::span<const double> x) { return model->mean(x); };
  return out;
}

}  // namespace dbo
