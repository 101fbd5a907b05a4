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

#include "dbo/gp.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "dbo/error.hpp"

namespace dbo {

std::pair<double, double> standardization(const std::vector<double>& y) {
  if (y.empty()) return {0.0, 1.0};
  double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  if (y.size() < 2) return {mean, 1.0};
  double ss = 0.0;
  for (double v : y) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / static_cast<double>(y.size() - 1));
  if (!(sd > 0.0) || !std::isfinite(sd)) sd = 1.0;
  return {mean, sd};
}

GPModel::GPModel(KernelSpec kernel, double noise_variance, const Dataset& data,
                 bool standardize)
    : kernel_(std::move(kernel)), noise_variance_(noise_variance), standardize_(standardize) {
  kernel_.validate();
  if (noise_variance < 0.0) throw InvalidArgument("GPModel: negative noise variance");
  if (data.dim() != kernel_.dim()) throw InvalidArgument("GPModel: kernel/data dimension mismatch");

  const std::size_t n = data.size();
  const std::size_t d = kernel_.dim();
  inputs_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  keys_.reserve(n);
  std::vector<double> raw;
  raw.reserve(n);
  Eigen::Index i = 0;
  for (const auto& [key, rec] : data) {
    for (std::size_t j = 0; j < d; ++j) inputs_(i, static_cast<Eigen::Index>(j)) = rec.x[j];
    raw.push_back(rec.y);
    keys_.push_back(key);
    ++i;
  }
  if (standardize_) std::tie(y_offset_, y_scale_) = standardization(raw);
  for (std::size_t r = 0; r < n; ++r) y(static_cast<Eigen::Index>(r)) = (raw[r] - y_offset_) / y_scale_;

  scaled_.resize(inputs_.rows(), inputs_.cols());
  for (Eigen::Index j = 0; j < inputs_.cols(); ++j) {
    scaled_.col(j) = inputs_.col(j) / kernel_.lengthscales[static_cast<std::size_t>(j)];
  }
  if (n == 0) return;
  GramFactor f = factorize_gram(kernel_, inputs_, noise_variance_, 0.0);
  jitter_ = f.jitter;
  chol_ = std::move(f.lower);
  alpha_ = chol_.triangularView<Eigen::Lower>().solve(y);
  chol_.triangularView<Eigen::Lower>().transpose().solveInPlace(alpha_);
  // Iterative refinement with residuals and weights in extended precision;
  // near-duplicate inputs make k . alpha cancel badly in plain doubles.
  alpha_ext_ = alpha_.cast<long double>();
  Eigen::VectorXd r(y.size());
  for (int step = 0; step < 3; ++step) {
    for (Eigen::Index a = 0; a < y.size(); ++a) {
      long double acc = y(a);
      for (Eigen::Index b = 0; b < y.size(); ++b) acc -= f.gram(a, b) * alpha_ext_(b);
      r(a) = static_cast<double>(acc);
    }
    chol_.triangularView<Eigen::Lower>().solveInPlace(r);
    chol_.triangularView<Eigen::Lower>().transpose().solveInPlace(r);
    alpha_ext_ += r.cast<long double>();
  }
  alpha_ = alpha_ext_.cast<double>();
}

double GPModel::weighted(const Eigen::VectorXd& k) const {
  long double acc = 0.0L;
  for (Eigen::Index i = 0; i < k.size(); ++i) acc += k(i) * alpha_ext_(i);
  return static_cast<double>(acc);
}

void GPModel::cross_row(std::span<const double> xq, Eigen::VectorXd& k) const {
  if (xq.size() != kernel_.dim()) throw InvalidArgument("posterior: query dimension mismatch");
  const std::size_t d = kernel_.dim();
  double sq[16];
  std::vector<double> heap;
  double* s = sq;
  if (d > 16) {
    heap.resize(d);
    s = heap.data();
  }
  for (std::size_t j = 0; j < d; ++j) s[j] = xq[j] / kernel_.lengthscales[j];
  k.resize(scaled_.rows());
  for (Eigen::Index i = 0; i < scaled_.rows(); ++i) {
    k(i) = kernel_eval_scaled(kernel_, scaled_.row(i).data(), s, d);
  }
}

double GPModel::mean(std::span<const double> xq) const {
  if (size() == 0) {
    if (xq.size() != kernel_.dim()) throw InvalidArgument("posterior: query dimension mismatch");
    return y_offset_;
  }
  Eigen::VectorXd k;
  cross_row(xq, k);
  return y_offset_ + y_scale_ * weighted(k);
}

Posterior GPModel::posterior(std::span<const double> xq) const {
  const double prior = kernel_.signal_variance;
  if (size() == 0) {
    if (xq.size() != kernel_.dim()) throw InvalidArgument("posterior: query dimension mismatch");
    return {y_offset_, y_scale_ * y_scale_ * prior};
  }
  Eigen::VectorXd k;
  cross_row(xq, k);
  const double mu = weighted(k);
  chol_.triangularView<Eigen::Lower>().solveInPlace(k);
  double var = prior - k.squaredNorm();
  if (var < 0.0) {
    if (var < -1e-8) {
      throw NumericalFailure("posterior variance " + std::to_string(var) + " below tolerance",
                             jitter_);
    }
    var = 0.0;
  }
  return {y_offset_ + y_scale_ * mu, y_scale_ * y_scale_ * var};
}

void GPModel::joint_posterior(const Eigen::MatrixXd& Xq, Eigen::VectorXd& mean,
                              Eigen::MatrixXd& cov) const {
  if (static_cast<std::size_t>(Xq.cols()) != kernel_.dim()) {
    throw InvalidArgument("joint_posterior: query dimension mismatch");
  }
  cov = kernel_gram(kernel_, Xq, 0.0, 0.0);
  mean = Eigen::VectorXd::Zero(Xq.rows());
  if (size() > 0) {
    Eigen::MatrixXd Ks = kernel_cross(kernel_, inputs_, Xq);  // n x m
    for (Eigen::Index c = 0; c < Ks.cols(); ++c) mean(c) = weighted(Ks.col(c));
    chol_.triangularView<Eigen::Lower>().solveInPlace(Ks);
    cov.noalias() -= Ks.transpose() * Ks;
  }
  mean = (mean.array() * y_scale_ + y_offset_).matrix();
  cov *= y_scale_ * y_scale_;
}

std::vector<double> posterior_sample_at(const GPModel& model, const std::vector<Point>& grid,
                                        std::uint64_t seed) {
  if (grid.empty()) throw InvalidArgument("posterior_sample_at: empty grid");
  Eigen::MatrixXd Xq = to_matrix(grid, model.dim());
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  model.joint_posterior(Xq, mean, cov);
  const double scale = model.kernel().signal_variance * model.y_scale() * model.y_scale();
  GramFactor f = factorize_with_jitter(cov, 0.0, scale);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(static_cast<Eigen::Index>(grid.size()));
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
  Eigen::VectorXd draw = mean + f.lower.triangularView<Eigen::Lower>() * z;
  return std::vector<double>(draw.data(), draw.data() + draw.size());
}

}  // namespace dbo
