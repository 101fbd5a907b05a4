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

#include "dbo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dbo/error.hpp"
#include "dbo/lowdisc.hpp"

namespace dbo {

std::string_view to_string(AcquisitionKind kind) {
  switch (kind) {
    case AcquisitionKind::kEI: return "ei";
    case AcquisitionKind::kPI: return "pi";
    case AcquisitionKind::kUCB: return "ucb";
  }
  return "unknown";
}

AcquisitionKind acquisition_kind_from_string(std::string_view name) {
  if (name == "ei" || name == "EI") return AcquisitionKind::kEI;
  if (name == "pi" || name == "PI") return AcquisitionKind::kPI;
  if (name == "ucb" || name == "UCB") return AcquisitionKind::kUCB;
  throw ConfigError("unknown acquisition '" + std::string(name) + "'");
}

void AcquisitionSpec::validate() const {
  if (!(xi >= 0.0)) throw InvalidArgument("acquisition: xi must be nonnegative");
  if (!kappa_schedule && !(kappa > 0.0)) throw InvalidArgument("acquisition: kappa must be positive");
}

AcquisitionSpec AcquisitionSpec::at_iteration(std::size_t t) const {
  AcquisitionSpec out = *this;
  if (kappa_schedule) {
    out.kappa = ucb_kappa_schedule(std::max<std::size_t>(t, 1));
    out.kappa_schedule = false;
  }
  return out;
}

Incumbent Incumbent::of(const Dataset& data) {
  auto best = data.best();
  if (!best) return {0.0, {}};
  return {best->y, best->x};
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

double ei(double mu, double sigma, double rho, double xi) {
  double improvement = rho - xi - mu;
  if (!(sigma > 0.0)) return std::max(0.0, improvement);
  if (std::isinf(improvement)) return improvement > 0 ? improvement : 0.0;
  double z = improvement / sigma;
  return std::max(0.0, improvement * normal_cdf(z) + sigma * normal_pdf(z));
}

double pi(double mu, double sigma, double rho, double xi) {
  double improvement = rho - xi - mu;
  if (!(sigma > 0.0)) return mu < rho - xi ? 1.0 : 0.0;
  return normal_cdf(improvement / sigma);
}

double ucb(double mu, double sigma, double kappa) { return -mu + kappa * sigma; }

double ucb_kappa_schedule(std::size_t t) {
  const double tt = static_cast<double>(t);
  return std::sqrt(2.0 * std::log(tt * tt * std::numbers::pi * std::numbers::pi / (3.0 * 0.1)));
}

double acquisition_value(const GPModel& model, const AcquisitionSpec& spec,
                         const Incumbent& inc, std::span<const double> x) {
  Posterior p = model.posterior(x);
  double sigma = std::sqrt(p.variance);
  switch (spec.kind) {
    case AcquisitionKind::kEI: return ei(p.mean, sigma, inc.rho, spec.xi);
    case AcquisitionKind::kPI: return pi(p.mean, sigma, inc.rho, spec.xi);
    case AcquisitionKind::kUCB: return ucb(p.mean, sigma, spec.kappa);
  }
  return 0.0;
}

double acquisition_range(const GPModel& model, const AcquisitionSpec& spec,
                         const Incumbent& inc, const Box& domain, std::size_t grid_size,
                         std::uint64_t seed) {
  if (grid_size < 2) throw InvalidArgument("acquisition_range: grid_size must be at least 2");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto visit = [&](std::span<const double> x) {
    double v = acquisition_value(model, spec, inc, x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  for (const Point& x : sobol_points_in(domain, grid_size, seed)) visit(x);
  const Eigen::MatrixXd& X = model.inputs();
  Point row(model.dim());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = X(i, static_cast<Eigen::Index>(j));
    visit(row);
  }
  return std::max(0.0, hi - lo);
}

}  // namespace dbo
