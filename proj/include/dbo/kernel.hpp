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

#ifndef DBO_KERNEL_HPP
#define DBO_KERNEL_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dbo/types.hpp"

namespace dbo {

enum class KernelFamily {
  kMatern12,
  kMatern32,
  kMatern52,
  kSquaredExponential,
  kRationalQuadratic,
};

std::string_view to_string(KernelFamily family);
KernelFamily kernel_family_from_string(std::string_view name);

// Stationary covariance with per-dimension (ARD) lengthscales.
struct KernelSpec {
  KernelFamily family = KernelFamily::kMatern52;
  std::vector<double> lengthscales;
  double signal_variance = 1.0;
  double rq_shape = 1.0;  // RationalQuadratic only

  std::size_t dim() const { return lengthscales.size(); }
  // Throws InvalidArgument when a positivity invariant is broken.
  void validate() const;
  // Covariance as a function of the lengthscale-weighted distance r.
  double of_distance(double r) const;
};

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> x2);

// Same as kernel_eval for rows of pre-scaled inputs (x_j / lengthscale_j).
double kernel_eval_scaled(const KernelSpec& spec, const double* a, const double* b,
                          std::size_t dim);

// Lower Cholesky factor of K + (noise + jitter) I with the jitter actually used.
struct GramFactor {
  Eigen::MatrixXd gram;  // K + (noise + jitter) I
  Eigen::MatrixXd lower;
  double jitter = 0.0;
};

// Plain Gram matrix K + (noise + jitter) I. Rows of X are points.
Eigen::MatrixXd kernel_gram(const KernelSpec& spec, const Eigen::MatrixXd& X,
                            double noise_variance, double jitter);
Eigen::MatrixXd kernel_gram(const KernelSpec& spec, const std::vector<Point>& X,
                            double noise_variance, double jitter);

// Factorizes the Gram matrix. When the requested jitter does not yield a
// positive-definite matrix, the jitter is raised to 1e-10 * signal_variance
// and multiplied by 10 up to 1e-4 * signal_variance. Throws NumericalFailure
// carrying the last jitter tried.
GramFactor factorize_gram(const KernelSpec& spec, const Eigen::MatrixXd& X,
                          double noise_variance, double jitter);

// Jitter escalation for an arbitrary symmetric matrix (posterior covariances).
// `scale` plays the role of the signal variance.
GramFactor factorize_with_jitter(const Eigen::MatrixXd& matrix, double jitter,
                                 double scale);

// Cross-covariance K(A, B), rows of A and B are points.
Eigen::MatrixXd kernel_cross(const KernelSpec& spec, const Eigen::MatrixXd& A,
                             const Eigen::MatrixXd& B);

Eigen::MatrixXd to_matrix(const std::vector<Point>& points, std::size_t dim);

}  // namespace dbo

#endif  // DBO_KERNEL_HPP
