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

#ifndef DBO_ACQUISITION_HPP
#define DBO_ACQUISITION_HPP

#include <cstdint>
#include <span>
#include <string_view>

#include "dbo/dataset.hpp"
#include "dbo/gp.hpp"

namespace dbo {

// All acquisitions follow the minimization convention: larger values mark
// more attractive queries, and improvement is measured below the incumbent.

enum class AcquisitionKind { kEI, kPI, kUCB };

std::string_view to_string(AcquisitionKind kind);
AcquisitionKind acquisition_kind_from_string(std::string_view name);

struct AcquisitionSpec {
  AcquisitionKind kind = AcquisitionKind::kEI;
  double xi = 0.0;      // EI / PI margin, objective units
  double kappa = 2.0;   // UCB, used when kappa_schedule is off
  bool kappa_schedule = false;

  void validate() const;
  // Copy with kappa fixed to its value at iteration t when scheduled.
  AcquisitionSpec at_iteration(std::size_t t) const;
};

struct Incumbent {
  double rho = 0.0;
  Point x_best;

  // Lowest y in the dataset; ties go to the first record in canonical order.
  // An empty dataset yields rho = 0, the prior mean, with no x_best.
  static Incumbent of(const Dataset& data);
};

double normal_cdf(double z);
double normal_pdf(double z);

double ei(double mu, double sigma, double rho, double xi);
double pi(double mu, double sigma, double rho, double xi);
double ucb(double mu, double sigma, double kappa);
// sqrt(2 log(t^2 pi^2 / (3 delta))) with delta = 0.1.
double ucb_kappa_schedule(std::size_t t);

double acquisition_value(const GPModel& model, const AcquisitionSpec& spec,
                         const Incumbent& inc, std::span<const double> x);

// max - min of the acquisition over `grid_size` shifted Sobol points plus
// every observed input of the model.
double acquisition_range(const GPModel& model, const AcquisitionSpec& spec,
                         const Incumbent& inc, const Box& domain, std::size_t grid_size,
                         std::uint64_t seed);

}  // namespace dbo

#endif  // DBO_ACQUISITION_HPP
