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

#include "dbo/error.hpp"
#include "dbo/kernel.hpp"
#include "helpers.hpp"

using namespace dbo;
using testing::make_kernel;

TEST_CASE("kernel: closed forms at unit distance") {
  const Point a{0.0}, b{1.0};
  CHECK(kernel_eval(make_kernel(KernelFamily::kMatern52, {1.0}), a, b) ==
        doctest::Approx(static_cast<double>(oracle::covariance("matern52", a, b, {1.0}, 1.0L))).epsilon(1e-14));
  CHECK(kernel_eval(make_kernel(KernelFamily::kMatern52, {1.0}), a, b) == doctest::Approx(0.52399).epsilon(1e-5));
  CHECK(kernel_eval(make_kernel(KernelFamily::kSquaredExponential, {1.0}), a, b) ==
        doctest::Approx(0.60653).epsilon(1e-5));
}

TEST_CASE("kernel: every family against the long double oracle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0), l(0.2, 3.0);
  for (KernelFamily f : testing::kFamilies) {
    for (int rep = 0; rep < 50; ++rep) {
      Point x(3), x2(3);
      std::vector<double> ls(3);
      for (int j = 0; j < 3; ++j) {
        x[j] = u(rng);
        x2[j] = u(rng);
        ls[j] = l(rng);
      }
      KernelSpec k = make_kernel(f, ls, 1.7);
      k.rq_shape = 0.8;
      const double want = static_cast<double>(oracle::covariance(testing::family_name(f), x, x2, ls, 1.7L, 0.8L));
      CHECK(std::abs(kernel_eval(k, x, x2) - want) <= 1e-14 * 1.7);
    }
  }
}

TEST_CASE("kernel: zero distance gives the signal variance") {
  for (KernelFamily f : testing::kFamilies) {
    KernelSpec k = make_kernel(f, {0.3, 2.0}, 2.5);
    CHECK(kernel_eval(k, Point{0.1, 0.4}, Point{0.1, 0.4}) == 2.5);
  }
}

TEST_CASE("kernel: symmetry, stationarity and monotonicity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (KernelFamily f : testing::kFamilies) {
    KernelSpec k = make_kernel(f, {0.5, 0.7});
    for (int rep = 0; rep < 100; ++rep) {
      Point x{u(rng), u(rng)}, y{u(rng), u(rng)}, s{u(rng), u(rng)};
      CHECK(kernel_eval(k, x, y) == kernel_eval(k, y, x));
      Point xs{x[0] + s[0], x[1] + s[1]}, ys{y[0] + s[0], y[1] + s[1]};
      CHECK(std::abs(kernel_eval(k, x, y) - kernel_eval(k, xs, ys)) <= 1e-12);
    }
    double prev = k.of_distance(0.0);
    for (int i = 1; i <= 200; ++i) {
      double v = k.of_distance(0.05 * i);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("kernel: dimension mismatch and bad names") {
  KernelSpec k = make_kernel(KernelFamily::kMatern52, {1.0, 1.0});
  CHECK_THROWS_AS(kernel_eval(k, Point{0.0}, Point{0.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(kernel_family_from_string("matern72"), ConfigError);
  CHECK(kernel_family_from_string("rq") == KernelFamily::kRationalQuadratic);
  KernelSpec bad = make_kernel(KernelFamily::kMatern52, {0.0});
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("kernel_gram: single point, entrywise oracle, PSD") {
  KernelSpec k = make_kernel(KernelFamily::kMatern32, {0.4}, 1.3);
  Eigen::MatrixXd K1 = kernel_gram(k, std::vector<Point>{{0.2}}, 0.1, 0.01);
  REQUIRE(K1.rows() == 1);
  CHECK(K1(0, 0) == doctest::Approx(1.3 + 0.1 + 0.01).epsilon(1e-15));

  std::vector<Point> X{{0.1}, {0.45}, {0.9}};
  Eigen::MatrixXd K = kernel_gram(k, X, 0.0, 0.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(K(i, j) - kernel_eval(k, X[i], X[j])) <= 1e-12);
      CHECK(std::abs(K(i, j) - K(j, i)) <= 1e-12);
    }
  }

  std::mt19937_64 rng(5);
  for (KernelFamily f : testing::kFamilies) {
    for (int rep = 0; rep < 20; ++rep) {
      auto P = testing::uniform_points(20, 3, rng);
      KernelSpec kf = make_kernel(f, {0.3, 0.5, 0.8});
      Eigen::LLT<Eigen::MatrixXd> llt(kernel_gram(kf, P, 0.0, 1e-10));
      REQUIRE(llt.info() == Eigen::Success);
      Eigen::MatrixXd L = llt.matrixL();
      CHECK((L.diagonal().array() > 0.0).all());
    }
  }
}

TEST_CASE("kernel_gram: duplicate points need jitter escalation") {
  KernelSpec k = make_kernel(KernelFamily::kMatern52, {1.0});
  Eigen::MatrixXd X(2, 1);
  X << 0.5, 0.5;
  GramFactor g = factorize_gram(k, X, 0.0, 0.0);
  CHECK(g.jitter > 0.0);
  CHECK(g.jitter <= 1e-4);
  CHECK((g.lower.diagonal().array() > 0.0).all());

  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(factorize_with_jitter(bad, 0.0, 1.0), NumericalFailure);
  try {
    factorize_with_jitter(bad, 0.0, 1.0);
  } catch (const NumericalFailure& e) {
    CHECK(e.last_jitter() == doctest::Approx(1e-4));
  }
}
