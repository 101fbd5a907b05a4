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

#include "dbo/objectives.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "dbo/error.hpp"
#include "dbo/gp_sample.hpp"
#include "dbo/kernel.hpp"

namespace dbo {
namespace {

using std::numbers::pi;
using Json = nlohmann::json;

Box cube(std::size_t d, double lo, double hi) {
  return Box(std::vector<double>(d, lo), std::vector<double>(d, hi));
}

Objective branin() {
  Objective o;
  o.name = "branin";
  o.dim = 2;
  o.bounds = Box({-5.0, 0.0}, {10.0, 15.0});
  o.eval = [](std::span<const double> x) {
    const double b = 5.1 / (4.0 * pi * pi), c = 5.0 / pi, t = 1.0 / (8.0 * pi);
    double u = x[1] - b * x[0] * x[0] + c * x[0] - 6.0;
    return u * u + 10.0 * (1.0 - t) * std::cos(x[0]) + 10.0;
  };
  o.f_min = 5.0 / (4.0 * pi);
  o.x_min = {{-pi, 12.275}, {pi, 2.275}, {3.0 * pi, 2.475}};
  return o;
}

// First Bohachevsky function.
Objective bohachevsky() {
  Objective o;
  o.name = "bohachevsky";
  o.dim = 2;
  o.bounds = cube(2, -100.0, 100.0);
  o.eval = [](std::span<const double> x) {
    return x[0] * x[0] + 2.0 * x[1] * x[1] - 0.3 * std::cos(3.0 * pi * x[0]) -
           0.4 * std::cos(4.0 * pi * x[1]) + 0.7;
  };
  o.f_min = 0.0;
  o.x_min = {{0.0, 0.0}};
  return o;
}

// Two-dimensional Shubert function, 18 global minima.
Objective schubert() {
  Objective o;
  o.name = "schubert";
  o.dim = 2;
  o.bounds = cube(2, -10.0, 10.0);
  o.eval = [](std::span<const double> x) {
    double prod = 1.0;
    for (int i = 0; i < 2; ++i) {
      double s = 0.0;
      for (int j = 1; j <= 5; ++j) s += j * std::cos((j + 1) * x[i] + j);
      prod *= s;
    }
    return prod;
  };
  o.f_min = -186.7309088310239;
  o.x_min = {{-1.425128429608772, -0.800321099494876}};
  return o;
}

Objective ackley(std::size_t d) {
  Objective o;
  o.name = "ackley";
  o.dim = d;
  o.bounds = cube(d, -32.768, 32.768);
  o.eval = [d](std::span<const double> x) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      s1 += x[j] * x[j];
      s2 += std::cos(2.0 * pi * x[j]);
    }
    const double n = static_cast<double>(d);
    return -20.0 * std::exp(-0.2 * std::sqrt(s1 / n)) - std::exp(s2 / n) + 20.0 + std::exp(1.0);
  };
  o.f_min = 0.0;
  o.x_min = {Point(d, 0.0)};
  return o;
}

Objective hartmann6() {
  static constexpr double kA[4][6] = {{10, 3, 17, 3.5, 1.7, 8},
                                      {0.05, 10, 17, 0.1, 8, 14},
                                      {3, 3.5, 1.7, 10, 17, 8},
                                      {17, 8, 0.05, 10, 0.1, 14}};
  static constexpr double kP[4][6] = {{1312, 1696, 5569, 124, 8283, 5886},
                                      {2329, 4135, 8307, 3736, 1004, 9991},
                                      {2348, 1451, 3522, 2883, 3047, 6650},
                                      {4047, 8828, 8732, 5743, 1091, 381}};
  static constexpr double kAlpha[4] = {1.0, 1.2, 3.0, 3.2};
  Objective o;
  o.name = "hartmann6";
  o.dim = 6;
  o.bounds = cube(6, 0.0, 1.0);
  o.eval = [](std::span<const double> x) {
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
      double inner = 0.0;
      for (int j = 0; j < 6; ++j) {
        double d = x[j] - 1e-4 * kP[i][j];
        inner += kA[i][j] * d * d;
      }
      total -= kAlpha[i] * std::exp(-inner);
    }
    return total;
  };
  o.f_min = -3.3223680114155125;
  o.x_min = {{0.20168950923409584, 0.15001068876417922, 0.4768739724329622,
              0.275332428312954, 0.3116516115751367, 0.6573005293804641}};
  return o;
}

Objective rosenbrock(std::size_t d) {
  if (d < 2) throw ConfigError("rosenbrock needs dim >= 2");
  Objective o;
  o.name = "rosenbrock";
  o.dim = d;
  o.bounds = cube(d, -5.0, 10.0);
  o.eval = [d](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < d; ++j) {
      double a = x[j + 1] - x[j] * x[j];
      double b = x[j] - 1.0;
      s += 100.0 * a * a + b * b;
    }
    return s;
  };
  o.f_min = 0.0;
  o.x_min = {Point(d, 1.0)};
  return o;
}

// Six-hump camel.
Objective camelback() {
  Objective o;
  o.name = "camelback";
  o.dim = 2;
  o.bounds = Box({-3.0, -2.0}, {3.0, 2.0});
  o.eval = [](std::span<const double> x) {
    double a = x[0] * x[0], b = x[1] * x[1];
    return (4.0 - 2.1 * a + a * a / 3.0) * a + x[0] * x[1] + (-4.0 + 4.0 * b) * b;
  };
  o.f_min = -1.0316284534898768;
  o.x_min = {{0.08984200678905811, -0.712656410015068},
             {-0.08984200678905811, 0.712656410015068}};
  return o;
}

Objective gp_sample(const Json& params) {
  std::size_t dim = params.value("dim", std::size_t{2});
  if (dim < 1) throw ConfigError("gp_sample: dim must be positive");
  KernelSpec spec;
  spec.family = kernel_family_from_string(params.value("kernel", std::string("matern52")));
  spec.lengthscales.assign(dim, params.value("lengthscale", 0.1));
  spec.signal_variance = params.value("signal_variance", 1.0);
  spec.rq_shape = params.value("rq_shape", 1.0);
  std::size_t anchors = params.value("anchors", std::size_t{1000});
  std::uint64_t seed = params.value("seed", std::uint64_t{0});
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("gp_sample: ") + e.what());
  }
  Objective o = sample_objective(spec, Box::unit(dim), anchors, seed);
  o.name = "gp_sample";
  return o;
}

// Additive Gaussian noise that depends only on (x, seed), so evaluation
// stays a pure function.
Objective with_noise(Objective base, double sd, std::uint64_t seed) {
  auto inner = base.eval;
  base.eval = [inner, sd, seed](std::span<const double> x) {
    std::uint64_t h = mix64(seed);
    for (double v : x) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof bits);
      h = mix64(h ^ bits);
    }
    std::mt19937_64 rng(h);
    std::normal_distribution<double> normal(0.0, sd);
    return inner(x) + normal(rng);
  };
  return base;
}

void check_params(const std::string& name, const Json& params,
                  std::initializer_list<const char*> allowed) {
  if (!params.is_object()) throw ConfigError("objective_params must be an object");
  for (auto it = params.begin(); it != params.end(); ++it) {
    bool ok = it.key() == "noise_sd" || it.key() == "noise_seed";
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError("objective '" + name + "' does not take parameter '" + it.key() + "'");
  }
}

}  // namespace

const std::vector<ObjectiveInfo>& objective_registry() {
  static const std::vector<ObjectiveInfo> kRegistry = {
      {"branin", "Branin-Hoo, 2-d, three global minima", false, 2},
      {"bohachevsky", "Bohachevsky (first form), 2-d on [-100,100]^2", false, 2},
      {"schubert", "Shubert, 2-d, 18 global minima", false, 2},
      {"ackley", "Ackley on [-32.768,32.768]^d", true, 2},
      {"hartmann6", "Hartmann, 6-d on the unit cube", false, 6},
      {"rosenbrock", "Rosenbrock on [-5,10]^d", true, 2},
      {"camelback", "Six-hump camel, 2-d", false, 2},
      {"gp_sample", "Random function drawn from a GP prior on the unit cube", true, 2},
  };
  return kRegistry;
}

Objective get_objective(const std::string& name, const Json& params) {
  Objective o;
  if (name == "branin") {
    check_params(name, params, {});
    o = branin();
  } else if (name == "bohachevsky") {
    check_params(name, params, {});
    o = bohachevsky();
  } else if (name == "schubert") {
    check_params(name, params, {});
    o = schubert();
  } else if (name == "ackley") {
    check_params(name, params, {"dim"});
    o = ackley(params.value("dim", std::size_t{2}));
  } else if (name == "hartmann6") {
    check_params(name, params, {});
    o = hartmann6();
  } else if (name == "rosenbrock") {
    check_params(name, params, {"dim"});
    o = rosenbrock(params.value("dim", std::size_t{2}));
  } else if (name == "camelback") {
    check_params(name, params, {});
    o = camelback();
  } else if (name == "gp_sample") {
    check_params(name, params,
                 {"dim", "kernel", "lengthscale", "signal_variance", "rq_shape", "anchors", "seed"});
    o = gp_sample(params);
  } else {
    throw ConfigError("unknown objective '" + name + "'");
  }
  if (o.dim < 1) throw ConfigError("objective dimension must be positive");
  double sd = params.value("noise_sd", 0.0);
  if (sd < 0.0) throw ConfigError("noise_sd must be nonnegative");
  if (sd > 0.0) o = with_noise(std::move(o), sd, params.value("noise_seed", std::uint64_t{0}));
  return o;
}

double immediate_regret(const Objective& objective, double best_y) {
  if (!objective.f_min) {
    throw UnsupportedMetric("objective '" + objective.name + "' has no known minimum");
  }
  return std::max(0.0, best_y - *objective.f_min);
}

}  // namespace dbo
