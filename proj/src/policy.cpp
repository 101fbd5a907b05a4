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

#include "dbo/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

#include "dbo/error.hpp"
#include "dbo/lowdisc.hpp"

namespace dbo {

void TemperatureSchedule::validate() const {
  if (mode == ScheduleMode::kFixed && !(beta > 0.0)) {
    throw InvalidArgument("schedule: fixed beta must be positive");
  }
  if (mode == ScheduleMode::kGlie && grid_size < 2) {
    throw InvalidArgument("schedule: GLIE grid size must be at least 2");
  }
}

double glie_beta(std::size_t t, double range) {
  if (t < 1) throw InvalidArgument("glie_beta: t must be positive");
  if (t == 1) return 0.0;
  return std::log(static_cast<double>(t)) / std::max(range, kMinAcquisitionRange);
}

void MHConfig::validate() const {
  if (chain_length < 1) throw InvalidArgument("mh: chain_length must be positive");
  if (burn_in < 0 || burn_in >= chain_length) {
    throw InvalidArgument("mh: burn_in must be in [0, chain_length)");
  }
  if (proposal_weights.empty() || proposal_weights.size() != proposal_scales.size()) {
    throw InvalidArgument("mh: proposal weights and scales must have equal, nonzero length");
  }
  double total = 0.0;
  for (double w : proposal_weights) {
    if (!(w >= 0.0)) throw InvalidArgument("mh: proposal weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("mh: proposal weights must sum to 1");
  for (double s : proposal_scales) {
    if (!(s > 0.0)) throw InvalidArgument("mh: proposal scales must be positive");
  }
  if (greedy_restarts < 1) throw InvalidArgument("mh: greedy_restarts must be positive");
  if (lattice_points == 1) throw InvalidArgument("mh: a lattice needs at least two points");
}

Point lattice_point(const Box& domain, std::size_t points_per_dim,
                    const std::vector<std::size_t>& index) {
  Point x(domain.dim());
  const double last = static_cast<double>(points_per_dim - 1);
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = domain.lo[j] + domain.width(j) * (static_cast<double>(index[j]) / last);
  }
  return x;
}

namespace {

// Flat index of a lattice point, used for the value cache.
std::size_t flat_index(const std::vector<std::size_t>& index, std::size_t m) {
  std::size_t f = 0;
  for (std::size_t v : index) f = f * m + v;
  return f;
}

ChainResult lattice_chain(const GPModel& model, const AcquisitionSpec& spec,
                          const Incumbent& inc, double beta, const Box& domain,
                          const MHConfig& mh, std::mt19937_64& rng, bool keep_states) {
  const std::size_t m = mh.lattice_points;
  const std::size_t d = domain.dim();
  double total = 1.0;
  for (std::size_t j = 0; j < d; ++j) total *= static_cast<double>(m);
  const bool cache_all = total <= 1 << 16;
  std::vector<std::optional<double>> cache(cache_all ? static_cast<std::size_t>(total) : 0);
  auto value = [&](const std::vector<std::size_t>& idx) {
    if (!cache_all) return acquisition_value(model, spec, inc, lattice_point(domain, m, idx));
    auto& slot = cache[flat_index(idx, m)];
    if (!slot) slot = acquisition_value(model, spec, inc, lattice_point(domain, m, idx));
    return *slot;
  };

  std::vector<std::size_t> state(d, 0);
  if (mh.init == ChainInit::kGreedyStart && cache_all) {
    // Exhaustive argmax over the lattice; ties go to the lowest flat index.
    double best = -std::numeric_limits<double>::infinity();
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t f = 0; f < static_cast<std::size_t>(total); ++f) {
      std::size_t rest = f;
      for (std::size_t j = d; j-- > 0;) {
        idx[j] = rest % m;
        rest /= m;
      }
      double v = value(idx);
      if (v > best) {
        best = v;
        state = idx;
      }
    }
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    for (std::size_t& v : state) v = pick(rng);
  }

  std::discrete_distribution<int> component(mh.proposal_weights.begin(), mh.proposal_weights.end());
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double spacing = 1.0 / static_cast<double>(m - 1);

  ChainResult out;
  double current = value(state);
  int accepted = 0, accepted_burn = 0;
  std::vector<std::size_t> proposal(d);
  for (int step = 0; step < mh.chain_length; ++step) {
    const double scale = mh.proposal_scales[static_cast<std::size_t>(component(rng))];
    bool inside = true;
    for (std::size_t j = 0; j < d; ++j) {
      long shift = std::lround(scale * normal(rng) / spacing);
      long next = static_cast<long>(state[j]) + shift;
      if (next < 0 || next >= static_cast<long>(m)) inside = false;
      proposal[j] = static_cast<std::size_t>(std::max(0L, next));
    }
    bool accept = false;
    double cand = current;
    if (inside) {
      cand = value(proposal);
      double log_ratio = beta * (cand - current);
      accept = log_ratio >= 0.0 || std::log(u01(rng)) < log_ratio;
    }
    if (accept) {
      state = proposal;
      current = cand;
      ++accepted;
      if (step < mh.burn_in) ++accepted_burn;
    }
    if (keep_states && step >= mh.burn_in) out.states.push_back(lattice_point(domain, m, state));
  }
  out.last = lattice_point(domain, m, state);
  out.acceptance = static_cast<double>(accepted) / mh.chain_length;
  out.burn_in_acceptance = mh.burn_in > 0 ? static_cast<double>(accepted_burn) / mh.burn_in : out.acceptance;
  out.low_acceptance = out.burn_in_acceptance < 0.01;
  return out;
}

}  // namespace

ChainResult boltzmann_chain(const GPModel& model, const AcquisitionSpec& spec,
                            const Incumbent& inc, double beta, const Box& domain,
                            const MHConfig& mh, std::uint64_t seed, bool keep_states) {
  mh.validate();
  if (!(beta >= 0.0)) throw InvalidArgument("boltzmann: beta must be nonnegative");
  std::mt19937_64 rng(seed);
  if (mh.lattice_points > 0) return lattice_chain(model, spec, inc, beta, domain, mh, rng, keep_states);

  const std::size_t d = domain.dim();
  Point state;
  if (mh.init == ChainInit::kGreedyStart) {
    state = greedy_argmax(model, spec, inc, domain, mh.greedy_restarts, derive_seed(seed, {1}));
  } else {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    Point u(d);
    for (double& v : u) v = u01(rng);
    state = domain.from_unit(u);
  }

  std::discrete_distribution<int> component(mh.proposal_weights.begin(), mh.proposal_weights.end());
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  ChainResult out;
  double current = acquisition_value(model, spec, inc, state);
  int accepted = 0, accepted_burn = 0;
  Point proposal(d);
  for (int step = 0; step < mh.chain_length; ++step) {
    const double scale = mh.proposal_scales[static_cast<std::size_t>(component(rng))];
    for (std::size_t j = 0; j < d; ++j) proposal[j] = state[j] + scale * domain.width(j) * normal(rng);
    bool accept = false;
    double cand = current;
    if (domain.contains(proposal)) {
      cand = acquisition_value(model, spec, inc, proposal);
      double log_ratio = beta * (cand - current);
      accept = log_ratio >= 0.0 || std::log(u01(rng)) < log_ratio;
    }
    if (accept) {
      state = proposal;
      current = cand;
      ++accepted;
      if (step < mh.burn_in) ++accepted_burn;
    }
    if (keep_states && step >= mh.burn_in) out.states.push_back(state);
  }
  out.last = state;
  out.acceptance = static_cast<double>(accepted) / mh.chain_length;
  out.burn_in_acceptance = mh.burn_in > 0 ? static_cast<double>(accepted_burn) / mh.burn_in : out.acceptance;
  out.low_acceptance = out.burn_in_acceptance < 0.01;
  return out;
}

BoltzmannDraw boltzmann_sample(const GPModel& model, const AcquisitionSpec& spec,
                               const Incumbent& inc, double beta, const Box& domain,
                               const MHConfig& mh, std::uint64_t seed) {
  ChainResult chain = boltzmann_chain(model, spec, inc, beta, domain, mh, seed, false);
  return {std::move(chain.last), chain.acceptance, chain.low_acceptance};
}

Point greedy_argmax(const GPModel& model, const AcquisitionSpec& spec, const Incumbent& inc,
                    const Box& domain, const GreedyConfig& config, std::uint64_t seed) {
  if (config.restarts < 1) throw InvalidArgument("greedy_argmax: restarts must be positive");
  const std::size_t d = domain.dim();
  const std::size_t restarts = static_cast<std::size_t>(config.restarts);
  const std::size_t pool = std::max(restarts, static_cast<std::size_t>(std::max(config.pool, 0)));
  auto acq = [&](std::span<const double> x) { return acquisition_value(model, spec, inc, x); };

  std::vector<Point> candidates = sobol_points_in(domain, pool, seed);
  std::vector<std::size_t> order(pool);
  std::iota(order.begin(), order.end(), 0);
  if (pool > restarts) {
    std::vector<double> screen(pool);
    for (std::size_t i = 0; i < pool; ++i) screen[i] = acq(candidates[i]);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return screen[a] > screen[b]; });
    order.resize(restarts);
    std::sort(order.begin(), order.end());
  }

  Point best_x;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t start : order) {
    Point x = candidates[start];
    double fx = acq(x);
    double step = 0.1;
    int evals = 1;
    while (step > 1e-7 && evals < config.max_evals_per_restart) {
      bool improved = false;
      for (std::size_t j = 0; j < d && !improved; ++j) {
        const double w = domain.width(j);
        if (!(w > 0.0)) continue;
        for (double dir : {1.0, -1.0}) {
          Point cand = x;
          cand[j] = std::clamp(x[j] + dir * step * w, domain.lo[j], domain.hi[j]);
          if (cand[j] == x[j]) continue;
          double fc = acq(cand);
          ++evals;
          if (fc > fx) {
            x = std::move(cand);
            fx = fc;
            improved = true;
            break;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (best_x.empty() || fx > best) {
      best = fx;
      best_x = std::move(x);
    }
  }
  return best_x;
}

Point greedy_argmax(const GPModel& model, const AcquisitionSpec& spec, const Incumbent& inc,
                    const Box& domain, int restarts, std::uint64_t seed) {
  GreedyConfig config;
  config.restarts = restarts;
  return greedy_argmax(model, spec, inc, domain, config, seed);
}

std::size_t thompson_select_on(const GPModel& model, const std::vector<Point>& candidates,
                               std::uint64_t seed) {
  if (candidates.empty()) throw InvalidArgument("thompson_select: no candidates");
  if (candidates.size() == 1) return 0;
  std::vector<double> draw = posterior_sample_at(model, candidates, seed);
  return static_cast<std::size_t>(std::min_element(draw.begin(), draw.end()) - draw.begin());
}

Point thompson_select(const GPModel& model, const Box& domain, std::size_t grid_size,
                      std::uint64_t seed) {
  if (grid_size < 1) throw InvalidArgument("thompson_select: grid_size must be positive");
  std::vector<Point> grid = sobol_points_in(domain, grid_size, derive_seed(seed, {1}));
  return grid[thompson_select_on(model, grid, derive_seed(seed, {2}))];
}

}  // namespace dbo
