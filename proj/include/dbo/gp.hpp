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

#ifndef DBO_GP_HPP
#define DBO_GP_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dbo/dataset.hpp"
#include "dbo/kernel.hpp"

namespace dbo {

struct Posterior {
  double mean = 0.0;
  double variance = 0.0;
};

// Zero-mean GP conditioned on a canonically ordered dataset snapshot.
//
// With standardization on, targets are shifted by their mean and divided by
// their standard deviation before conditioning; the kernel then lives in
// standardized units and posterior() maps back to objective units.
// Immutable after construction.
class GPModel {
 public:
  GPModel() = default;
  GPModel(KernelSpec kernel, double noise_variance, const Dataset& data,
          bool standardize = true);

  // Posterior of the latent function at xq. Variances that come out slightly
  // negative are clamped to zero; anything below -1e-8 (standardized units)
  // throws NumericalFailure.
  Posterior posterior(std::span<const double> xq) const;
  double mean(std::span<const double> xq) const;

  // Joint posterior over a set of points (rows of Xq), in objective units.
  void joint_posterior(const Eigen::MatrixXd& Xq, Eigen::VectorXd& mean,
                       Eigen::MatrixXd& cov) const;

  const KernelSpec& kernel() const { return kernel_; }
  double noise_variance() const { return noise_variance_; }
  double jitter() const { return jitter_; }
  std::size_t size() const { return static_cast<std::size_t>(inputs_.rows()); }
  std::size_t dim() const { return kernel_.dim(); }
  const Eigen::MatrixXd& inputs() const { return inputs_; }
  const Eigen::MatrixXd& chol() const { return chol_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }
  const std::vector<RecordKey>& keys() const { return keys_; }
  double y_offset() const { return y_offset_; }
  double y_scale() const { return y_scale_; }
  bool standardized() const { return standardize_; }

 private:
  void cross_row(std::span<const double> xq, Eigen::VectorXd& k) const;
  double weighted(const Eigen::VectorXd& k) const;

  KernelSpec kernel_;
  double noise_variance_ = 0.0;
  double jitter_ = 0.0;
  bool standardize_ = true;
  double y_offset_ = 0.0;
  double y_scale_ = 1.0;
  Eigen::MatrixXd inputs_;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> scaled_;
  Eigen::MatrixXd chol_;
  Eigen::VectorXd alpha_;
  Eigen::Matrix<long double, Eigen::Dynamic, 1> alpha_ext_;
  std::vector<RecordKey> keys_;
};

// Mean and scale used to standardize targets; scale is 1 for fewer than two
// records or zero spread.
std::pair<double, double> standardization(const std::vector<double>& y);

// One joint draw from the posterior at grid (objective units).
// Deterministic given seed.
std::vector<double> posterior_sample_at(const GPModel& model,
                                        const std::vector<Point>& grid,
                                        std::uint64_t seed);

}  // namespace dbo

#endif  // DBO_GP_HPP
