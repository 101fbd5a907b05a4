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

#include <cmath>
#include <random>

#include <doctest.h>

#include "dbo/acquisition.hpp"
#include "dbo/error.hpp"
#include "helpers.hpp"

using namespace dbo;
using testing::make_data;
using testing::make_kernel;

namespace {

long double ei_ld(long double mu, long double s, long double rho, long double xi) {
  const long double imp = rho - xi - mu;
  if (s <= 0) return std::max(0.0L, imp);
  const long double z = imp / s;
  const long double cdf = 0.5L * std::erfc(-z / std::sqrt(2.0L));
  const long double pdf = std::exp(-0.5L * z * z) / std::sqrt(2.0L * 3.14159265358979323846264338327950288L);
  return imp * cdf + s * pdf;
}

GPModel three_point_model() {
  return GPModel(make_kernel(KernelFamily::kMatern52, {0.15}), 0.0,
                 make_data(Box({0.0}, {1.0}), {{0.1}, {0.45}, {0.8}}, {0.3, -0.4, 0.9}));
}

}  // namespace

TEST_CASE("ei: closed-form edge cases") {
  CHECK(ei(0.2, 1.0, 0.2, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-15));
  CHECK(ei(0.2, 1.0, 0.2, 0.0) == doctest::Approx(0.39894).epsilon(1e-5));
  CHECK(ei(1.0, 0.0, 0.5, 0.0) == 0.0);
  CHECK(ei(0.5, 0.0, 0.5, 0.0) == 0.0);
  CHECK(ei(0.2, 0.0, 0.5, 0.0) == doctest::Approx(0.3));
}

TEST_CASE("ei and pi: Monte-Carlo oracle at the named case") {
  oracle::MonteCarlo mei, mpi;
  oracle::improvement_mc(0.3, 0.7, 0.1, 0.0, 1'000'000, 17, mei, mpi);
  CHECK(std::abs(ei(0.3, 0.7, 0.1, 0.0) - mei.mean) <= 3.0 * mei.stderr_);
  CHECK(std::abs(pi(0.3, 0.7, 0.1, 0.0) - mpi.mean) <= 3.0 * mpi.stderr_);
  oracle::improvement_mc(-0.4, 1.3, 0.2, 0.05, 1'000'000, 18, mei, mpi);
  CHECK(std::abs(pi(-0.4, 1.3, 0.2, 0.05) - mpi.mean) <= 3.0 * mpi.stderr_);
}

TEST_CASE("pi and ucb: edge cases") {
  CHECK(pi(0.7, 0.3, 0.7, 0.0) == 0.5);
  CHECK(pi(1.0, 0.0, 0.5, 0.0) == 0.0);
  CHECK(ucb(1.3, 0.0, 2.0) == -1.3);
  CHECK(ucb(1.0, 0.5, 2.0) == 0.0);
  const double want = std::sqrt(2.0 * std::log(100.0 * M_PI * M_PI / 0.3));
  CHECK(ucb_kappa_schedule(10) == doctest::Approx(want).epsilon(1e-14));
  CHECK(std::abs(ucb_kappa_schedule(10) - 4.03) < 0.01);
  AcquisitionSpec s;
  s.kind = AcquisitionKind::kUCB;
  s.kappa_schedule = true;
  CHECK(s.at_iteration(10).kappa == ucb_kappa_schedule(10));
  CHECK_FALSE(s.at_iteration(10).kappa_schedule);
}

TEST_CASE("ei and pi: monotonicity and ranges") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0), us(0.01, 3.0);
  for (int rep = 0; rep < 500; ++rep) {
    const double mu = u(rng), rho = u(rng), s = us(rng), dm = 0.1 * us(rng);
    CHECK(ei(mu, s, rho, 0.0) >= 0.0);
    CHECK(ei(mu + dm, s, rho, 0.0) <= ei(mu, s, rho, 0.0));
    const double p = pi(mu, s, rho, 0.0);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    CHECK(pi(mu + dm, s, rho, 0.0) <= p);
    if (mu >= rho) CHECK(ei(mu, s + dm, rho, 0.0) >= ei(mu, s, rho, 0.0));
  }
}

TEST_CASE("acquisition_value: composition oracle and stationary prior") {
  GPModel m = three_point_model();
  Dataset data = make_data(Box({0.0}, {1.0}), {{0.1}, {0.45}, {0.8}}, {0.3, -0.4, 0.9});
  Incumbent inc = Incumbent::of(data);
  CHECK(inc.rho == -0.4);
  AcquisitionSpec spec;
  spec.xi = 0.01;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    Point x{u(rng)};
    Posterior p = m.posterior(x);
    const double want = static_cast<double>(ei_ld(p.mean, std::sqrt(static_cast<long double>(p.variance)), inc.rho, 0.01));
    CHECK(std::abs(acquisition_value(m, spec, inc, x) - want) <= 1e-12);
  }

  GPModel prior(make_kernel(KernelFamily::kMatern52, {0.2}), 0.0, Dataset(Box({0.0}, {1.0})));
  Incumbent none = Incumbent::of(Dataset(Box({0.0}, {1.0})));
  CHECK(none.rho == 0.0);
  CHECK(none.x_best.empty());
  const double v0 = acquisition_value(prior, AcquisitionSpec{}, none, Point{0.0});
  for (int i = 0; i < 50; ++i) CHECK(std::abs(acquisition_value(prior, AcquisitionSpec{}, none, Point{u(rng)}) - v0) <= 1e-10);
  CHECK(acquisition_range(prior, AcquisitionSpec{}, none, Box({0.0}, {1.0}), 256, 1) <= 1e-10);
}

TEST_CASE("acquisition_value: EI vanishes at the noise-free incumbent") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    auto X = testing::uniform_points(6, 2, rng);
    std::vector<double> y;
    for (const auto& x : X) y.push_back(std::cos(4 * x[0]) + x[1]);
    Dataset data = make_data(Box::unit(2), X, y);
    GPModel m(make_kernel(KernelFamily::kMatern52, {0.3, 0.3}), 0.0, data);
    Incumbent inc = Incumbent::of(data);
    CHECK(acquisition_value(m, AcquisitionSpec{}, inc, inc.x_best) <= 1e-8);
  }
}

TEST_CASE("acquisition_value: shifting every target leaves EI unchanged") {
  const Box box({0.0}, {1.0});
  std::vector<Point> X{{0.1}, {0.3}, {0.55}, {0.9}};
  std::vector<double> y{0.2, -0.5, 0.1, 0.7}, ys;
  for (double v : y) ys.push_back(v + 37.5);
  Dataset a = make_data(box, X, y), b = make_data(box, X, ys);
  KernelSpec k = make_kernel(KernelFamily::kMatern52, {0.2});
  GPModel ma(k, 1e-6, a), mb(k, 1e-6, b);
  Incumbent ia = Incumbent::of(a), ib = Incumbent::of(b);
  CHECK(ib.rho == doctest::Approx(ia.rho + 37.5));
  for (int i = 0; i <= 100; ++i) {
    Point x{i / 100.0};
    CHECK(std::abs(acquisition_value(ma, AcquisitionSpec{}, ia, x) - acquisition_value(mb, AcquisitionSpec{}, ib, x)) <= 1e-8);
  }
}

TEST_CASE("acquisition_range: dense reference and monotone in the grid") {
  GPModel m = three_point_model();
  Dataset data = make_data(Box({0.0}, {1.0}), {{0.1}, {0.45}, {0.8}}, {0.3, -0.4, 0.9});
  Incumbent inc = Incumbent::of(data);
  for (AcquisitionKind kind : {AcquisitionKind::kEI, AcquisitionKind::kPI, AcquisitionKind::kUCB}) {
    AcquisitionSpec spec;
    spec.kind = kind;
    double lo = INFINITY, hi = -INFINITY;
    for (int i = 0; i < 100000; ++i) {
      double v = acquisition_value(m, spec, inc, Point{i / 99999.0});
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (double xo : {0.1, 0.45, 0.8}) {
      double v = acquisition_value(m, spec, inc, Point{xo});
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double ref = hi - lo;
    const double c = acquisition_range(m, spec, inc, Box({0.0}, {1.0}), 1024, 3);
    CHECK(std::abs(c - ref) <= 0.1 * ref);
    double prev = 0.0;
    for (std::size_t g : {2u, 8u, 64u, 512u, 4096u}) {
      const double cg = acquisition_range(m, spec, inc, Box({0.0}, {1.0}), g, 3);
      CHECK(cg >= prev);
      prev = cg;
    }
  }
  CHECK_THROWS_AS(acquisition_range(m, AcquisitionSpec{}, inc, Box({0.0}, {1.0}), 1, 3), InvalidArgument);
  CHECK_THROWS_AS(acquisition_kind_from_string("kg"), ConfigError);
}
