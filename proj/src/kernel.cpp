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

#include "dbo/kernel.hpp"

#include <cmath>
#include <string>

#include "dbo/error.hpp"

namespace dbo {
namespace {

constexpr double kSqrt3 = 1.7320508075688772935;
constexpr double kSqrt5 = 2.2360679774997896964;
constexpr double kFirstJitter = 1e-10;
constexpr double kLastJitter = 1e-4;

void check_dims(const KernelSpec& spec, std::size_t n) {
  if (n != spec.dim()) {
    throw InvalidArgument("kernel: point dimension " + std::to_string(n) +
                          " does not match " + std::to_string(spec.dim()) +
                          " lengthscales");
  }
}

// Squared weighted distance between rows of scaled inputs.
inline double sq_dist(const double* a, const double* b, std::size_t dim) {
  double s = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    double d = a[j] - b[j];
    s += d * d;
  }
  return s;
}

Eigen::MatrixXd scaled_rows(const KernelSpec& spec, const Eigen::MatrixXd& X) {
  check_dims(spec, static_cast<std::size_t>(X.cols()));
  Eigen::MatrixXd S(X.rows(), X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) S.col(j) = X.col(j) / spec.lengthscales[j];
  return S;
}

bool try_cholesky(const Eigen::MatrixXd& m, Eigen::MatrixXd& lower) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return false;
  lower = llt.matrixL();
  for (Eigen::Index i = 0; i < lower.rows(); ++i) {
    if (!(lower(i, i) > 0.0) || !std::isfinite(lower(i, i))) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::kMatern12: return "matern12";
    case KernelFamily::kMatern32: return "matern32";
    case KernelFamily::kMatern52: return "matern52";
    case KernelFamily::kSquaredExponential: return "se";
    case KernelFamily::kRationalQuadratic: return "rq";
  }
  return "unknown";
}

KernelFamily kernel_family_from_string(std::string_view name) {
  if (name == "matern12") return KernelFamily::kMatern12;
  if (name == "matern32") return KernelFamily::kMatern32;
  if (name == "matern52") return KernelFamily::kMatern52;
  if (name == "se" || name == "squared_exponential") return KernelFamily::kSquaredExponential;
  if (name == "rq" || name == "rational_quadratic") return KernelFamily::kRationalQuadratic;
  throw ConfigError("unknown kernel family '" + std::string(name) + "'");
}

void KernelSpec::validate() const {
  if (lengthscales.empty()) throw InvalidArgument("kernel: no lengthscales");
  for (double l : lengthscales) {
    if (!(l > 0.0) || !std::isfinite(l)) throw InvalidArgument("kernel: lengthscale must be positive");
  }
  if (!(signal_variance > 0.0) || !std::isfinite(signal_variance)) {
    throw InvalidArgument("kernel: signal variance must be positive");
  }
  if (family == KernelFamily::kRationalQuadratic && !(rq_shape > 0.0)) {
    throw InvalidArgument("kernel: rational quadratic shape must be positive");
  }
}

double KernelSpec::of_distance(double r) const {
  switch (family) {
    case KernelFamily::kMatern12:
      return signal_variance * std::exp(-r);
    case KernelFamily::kMatern32: {
      double s = kSqrt3 * r;
      return signal_variance * (1.0 + s) * std::exp(-s);
    }
    case KernelFamily::kMatern52: {
      double s = kSqrt5 * r;
      return signal_variance * (1.0 + s + s * s / 3.0) * std::exp(-s);
    }
    case KernelFamily::kSquaredExponential:
      return signal_variance * std::exp(-0.5 * r * r);
    case KernelFamily::kRationalQuadratic:
      return signal_variance * std::pow(1.0 + r * r / (2.0 * rq_shape), -rq_shape);
  }
  return 0.0;
}

double kernel_eval_scaled(const KernelSpec& spec, const double* a, const double* b,
                          std::size_t dim) {
  double d2 = sq_dist(a, b, dim);
  switch (spec.family) {
    case KernelFamily::kSquaredExponential:
      return spec.signal_variance * std::exp(-0.5 * d2);
    case KernelFamily::kRationalQuadratic:
      return spec.signal_variance * std::pow(1.0 + d2 / (2.0 * spec.rq_shape), -spec.rq_shape);
    default:
      return spec.of_distance(std::sqrt(d2));
  }
}

double kernel_eval(const KernelSpec& spec, std::span<const double> x,
                   std::span<const double> x2) {
  check_dims(spec, x.size());
  check_dims(spec, x2.size());
  double d2 = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double d = (x[j] - x2[j]) / spec.lengthscales[j];
    d2 += d * d;
  }
  switch (spec.family) {
    case KernelFamily::kSquaredExponential:
      return spec.signal_variance * std::exp(-0.5 * d2);
    case KernelFamily::kRationalQuadratic:
      return spec.signal_variance * std::pow(1.0 + d2 / (2.0 * spec.rq_shape), -spec.rq_shape);
    default:
      return spec.of_distance(std::sqrt(d2));
  }
}

Eigen::MatrixXd to_matrix(const std::vector<Point>& points, std::size_t dim) {
  Eigen::MatrixXd X(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) throw InvalidArgument("point dimension mismatch");
    for (std::size_t j = 0; j < dim; ++j) X(i, j) = points[i][j];
  }
  return X;
}

Eigen::MatrixXd kernel_gram(const KernelSpec& spec, const Eigen::MatrixXd& X,
                            double noise_variance, double jitter) {
  if (noise_variance < 0.0) throw InvalidArgument("kernel_gram: negative noise variance");
  if (jitter < 0.0) throw InvalidArgument("kernel_gram: negative jitter");
  // Row-major copy keeps each scaled point contiguous.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> S = scaled_rows(spec, X);
  const Eigen::Index n = X.rows();
  const std::size_t d = static_cast<std::size_t>(X.cols());
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    K(i, i) = spec.signal_variance + noise_variance + jitter;
    for (Eigen::Index j = 0; j < i; ++j) {
      double k = kernel_eval_scaled(spec, S.row(i).data(), S.row(j).data(), d);
      K(i, j) = k;
      K(j, i) = k;
    }
  }
  return K;
}

Eigen::MatrixXd kernel_gram(const KernelSpec& spec, const std::vector<Point>& X,
                            double noise_variance, double jitter) {
  return kernel_gram(spec, to_matrix(X, spec.dim()), noise_variance, jitter);
}

Eigen::MatrixXd kernel_cross(const KernelSpec& spec, const Eigen::MatrixXd& A,
                             const Eigen::MatrixXd& B) {
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> SA = scaled_rows(spec, A);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> SB = scaled_rows(spec, B);
  const std::size_t d = static_cast<std::size_t>(A.cols());
  Eigen::MatrixXd K(A.rows(), B.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < B.rows(); ++j) {
      K(i, j) = kernel_eval_scaled(spec, SA.row(i).data(), SB.row(j).data(), d);
    }
  }
  return K;
}

GramFactor factorize_with_jitter(const Eigen::MatrixXd& matrix, double jitter,
                                 double scale) {
  GramFactor out;
  const Eigen::Index n = matrix.rows();
  out.gram = matrix;
  out.gram.diagonal().array() += jitter;
  out.jitter = jitter;
  if (try_cholesky(out.gram, out.lower)) return out;

  double extra = std::max(jitter, kFirstJitter * scale);
  const double last = kLastJitter * scale;
  while (true) {
    out.gram = matrix;
    out.gram.diagonal().array() += extra;
    out.jitter = extra;
    if (try_cholesky(out.gram, out.lower)) return out;
    if (extra >= last * (1.0 - 1e-12)) break;
    extra = std::min(extra * 10.0, last);
  }
  throw NumericalFailure("Cholesky factorization failed for " + std::to_string(n) + "x" +
                             std::to_string(n) + " matrix at jitter " + std::to_string(extra),
                         extra);
}

GramFactor factorize_gram(const KernelSpec& spec, const Eigen::MatrixXd& X,
                          double noise_variance, double jitter) {
  Eigen::MatrixXd K = kernel_gram(spec, X, noise_variance, 0.0);
  return factorize_with_jitter(K, jitter, spec.signal_variance);
}

}  // namespace dbo
