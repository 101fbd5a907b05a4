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

#include "dbo/hyperfit.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>

#include "dbo/error.hpp"
#include "dbo/gp.hpp"
#include "dbo/lowdisc.hpp"

namespace dbo {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInvPhi = 0.6180339887498948482;

struct Problem {
  const Eigen::MatrixXd& X;
  const Eigen::VectorXd& y;
  KernelFamily family;
  double rq_shape;
  std::size_t dim;
  bool ard;
  std::vector<double> lo, hi;  // log-space bounds per parameter
  int evaluations = 0;

  std::size_t n_length() const { return ard ? dim : 1; }
  std::size_t n_params() const { return n_length() + 2; }

  KernelSpec kernel_of(const std::vector<double>& theta) const {
    KernelSpec k;
    k.family = family;
    k.rq_shape = rq_shape;
    k.lengthscales.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) k.lengthscales[j] = std::exp(theta[ard ? j : 0]);
    k.signal_variance = std::exp(theta[n_length()]);
    return k;
  }
  double noise_of(const std::vector<double>& theta) const { return std::exp(theta[n_length() + 1]); }

  double value(const std::vector<double>& theta) {
    ++evaluations;
    try {
      double v = log_marginal_likelihood(kernel_of(theta), noise_of(theta), X, y);
      return std::isfinite(v) ? v : kNegInf;
    } catch (const NumericalFailure&) {
      return kNegInf;
    }
  }
};

// Maximizes the objective along coordinate j within [a, b]; returns the best
// point seen including the current one.
void golden_line(Problem& prob, std::vector<double>& theta, double& best, std::size_t j,
                 double a, double b, int budget) {
  if (budget < 2 || !(b > a)) return;
  const double start = theta[j];
  double best_s = start;
  auto at = [&](double s) {
    theta[j] = s;
    double v = prob.value(theta);
    if (v > best) {
      best = v;
      best_s = s;
    }
    return v;
  };
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = at(c);
  double fd = at(d);
  for (int used = 2; used < budget; ++used) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = at(d);
    }
  }
  theta[j] = best_s;
}

}  // namespace

double log_marginal_likelihood(const KernelSpec& kernel, double noise_variance,
                               const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  const Eigen::Index n = X.rows();
  if (n == 0) throw InvalidArgument("log_marginal_likelihood: empty dataset");
  GramFactor f = factorize_gram(kernel, X, noise_variance, 0.0);
  Eigen::VectorXd v = f.lower.triangularView<Eigen::Lower>().solve(y);
  double log_det = 2.0 * f.lower.diagonal().array().log().sum();
  return -0.5 * v.squaredNorm() - 0.5 * log_det -
         0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
}

double log_marginal_likelihood(const KernelSpec& kernel, double noise_variance,
                               const Dataset& data, bool standardize) {
  if (data.empty()) throw InvalidArgument("log_marginal_likelihood: empty dataset");
  kernel.validate();
  Eigen::MatrixXd X = to_matrix(data.inputs(), kernel.dim());
  std::vector<double> raw = data.targets();
  auto [offset, scale] = standardize ? standardization(raw) : std::pair{0.0, 1.0};
  Eigen::VectorXd y(static_cast<Eigen::Index>(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) y(static_cast<Eigen::Index>(i)) = (raw[i] - offset) / scale;
  return log_marginal_likelihood(kernel, noise_variance, X, y);
}

KernelSpec default_kernel(KernelFamily family, const Box& domain) {
  KernelSpec k;
  k.family = family;
  k.lengthscales.resize(domain.dim());
  for (std::size_t j = 0; j < domain.dim(); ++j) {
    double w = domain.width(j);
    k.lengthscales[j] = w > 0.0 ? 0.25 * w : 1.0;
  }
  k.signal_variance = 1.0;
  return k;
}

FitResult fit_hyperparameters(const Dataset& data, KernelFamily family, const FitConfig& config) {
  const Box& domain = data.domain();
  const std::size_t dim = domain.dim();
  KernelSpec initial = config.initial.value_or(default_kernel(family, domain));
  initial.family = family;
  double initial_noise = config.initial_noise;

  FitResult result{initial, initial_noise, kNegInf, 0, false};
  if (config.fixed) return result;
  if (data.size() < 2) throw InvalidArgument("fit_hyperparameters: need at least two records");
  if (config.starts < 1 || config.evals_per_start < 4) {
    throw ConfigError("fit_hyperparameters: starts >= 1 and evals_per_start >= 4 required");
  }

  Eigen::MatrixXd X = to_matrix(data.inputs(), dim);
  std::vector<double> raw = data.targets();
  auto [offset, scale] = config.standardize ? standardization(raw) : std::pair{0.0, 1.0};
  Eigen::VectorXd y(static_cast<Eigen::Index>(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) y(static_cast<Eigen::Index>(i)) = (raw[i] - offset) / scale;

  Problem prob{X, y, family, initial.rq_shape, dim, config.ard, {}, {}};
  const std::size_t nl = prob.n_length();
  double mean_width = 0.0;
  for (std::size_t j = 0; j < dim; ++j) mean_width += domain.width(j);
  mean_width /= static_cast<double>(dim);
  std::vector<double> widths(nl);
  for (std::size_t j = 0; j < nl; ++j) {
    double w = config.ard ? domain.width(j) : mean_width;
    if (!(w > 0.0)) w = 1.0;
    widths[j] = w;
    prob.lo.push_back(std::log(config.lengthscale_lo * w));
    prob.hi.push_back(std::log(config.lengthscale_hi * w));
  }
  prob.lo.push_back(std::log(config.signal_lo));
  prob.hi.push_back(std::log(config.signal_hi));
  prob.lo.push_back(std::log(config.noise_lo));
  prob.hi.push_back(std::log(config.noise_hi));
  const std::size_t np = prob.n_params();

  std::vector<std::vector<double>> starts;
  {
    std::vector<double> warm(np);
    double tied = 0.0;
    for (double l : initial.lengthscales) tied += std::log(l);
    tied /= static_cast<double>(initial.lengthscales.size());
    for (std::size_t j = 0; j < nl; ++j) warm[j] = config.ard ? std::log(initial.lengthscales[j]) : tied;
    warm[nl] = std::log(initial.signal_variance);
    warm[nl + 1] = std::log(std::max(initial_noise, config.noise_lo));
    for (std::size_t j = 0; j < np; ++j) warm[j] = std::clamp(warm[j], prob.lo[j], prob.hi[j]);
    starts.push_back(std::move(warm));
  }
  // Quasi-random starts over a central part of the search box.
  if (config.starts > 1) {
    auto unit = sobol_points(static_cast<std::size_t>(config.starts - 1), np,
                             derive_seed(config.seed, {0x6669747374617274ULL}));
    std::vector<double> slo(np), shi(np);
    for (std::size_t j = 0; j < nl; ++j) {
      slo[j] = std::max(prob.lo[j], std::log(0.01 * widths[j]));
      shi[j] = std::min(prob.hi[j], std::log(2.0 * widths[j]));
    }
    slo[nl] = std::max(prob.lo[nl], std::log(0.1));
    shi[nl] = std::min(prob.hi[nl], std::log(10.0));
    slo[nl + 1] = prob.lo[nl + 1];
    shi[nl + 1] = std::min(prob.hi[nl + 1], std::max(prob.lo[nl + 1], std::log(0.1)));
    for (const Point& u : unit) {
      std::vector<double> s(np);
      for (std::size_t j = 0; j < np; ++j) s[j] = slo[j] + u[j] * (shi[j] - slo[j]);
      starts.push_back(std::move(s));
    }
  }

  std::vector<double> best_theta;
  double best = kNegInf;
  constexpr int kLineEvals = 7;
  for (std::vector<double> theta : starts) {
    const int stop = prob.evaluations + config.evals_per_start;
    double value = prob.value(theta);
    double width = 2.0;  // log units
    while (prob.evaluations + 2 <= stop && width > 1e-3) {
      for (std::size_t j = 0; j < np && prob.evaluations + 2 <= stop; ++j) {
        double a = std::max(prob.lo[j], theta[j] - width);
        double b = std::min(prob.hi[j], theta[j] + width);
        int budget = std::min(kLineEvals, stop - prob.evaluations);
        golden_line(prob, theta, value, j, a, b, budget);
      }
      width *= 0.5;
    }
    if (value > best) {
      best = value;
      best_theta = theta;
    }
  }
  result.evaluations = prob.evaluations;
  if (best_theta.empty() || !std::isfinite(best)) {
    result.fell_back = true;
    return result;
  }
  result.kernel = prob.kernel_of(best_theta);
  result.noise_variance = prob.noise_of(best_theta);
  result.log_likelihood = best;
  return result;
}

namespace {

template <typename T>
void put(std::string& key, const T& v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  key.append(buf, sizeof(T));
}

void put_kernel(std::string& key, const KernelSpec& k) {
  put(key, static_cast<int>(k.family));
  put(key, k.lengthscales.size());
  for (double l : k.lengthscales) put(key, l);
  put(key, k.signal_variance);
  put(key, k.rq_shape);
}

}  // namespace

FitResult FitCache::fit(const Dataset& data, KernelFamily family, const FitConfig& config) {
  std::string key;
  put(key, static_cast<int>(family));
  put(key, config.fixed);
  put(key, config.ard);
  put(key, config.standardize);
  put(key, config.starts);
  put(key, config.evals_per_start);
  put(key, config.seed);
  for (double v : {config.lengthscale_lo, config.lengthscale_hi, config.signal_lo, config.signal_hi,
                   config.noise_lo, config.noise_hi, config.initial_noise}) {
    put(key, v);
  }
  put(key, config.initial.has_value());
  if (config.initial) put_kernel(key, *config.initial);
  for (std::size_t j = 0; j < data.domain().dim(); ++j) {
    put(key, data.domain().lo[j]);
    put(key, data.domain().hi[j]);
  }
  for (const auto& [k, r] : data) {
    put(key, r.node_id);
    put(key, r.seq);
    for (double v : r.x) put(key, v);
    put(key, r.y);
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = table_.find(key); it != table_.end()) {
      ++hits_;
      return it->second;
    }
  }
  FitResult result = fit_hyperparameters(data, family, config);
  std::lock_guard<std::mutex> lock(mu_);
  table_.emplace(std::move(key), result);
  return result;
}

std::size_t FitCache::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

std::size_t FitCache::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return table_.size();
}

}  // namespace dbo
