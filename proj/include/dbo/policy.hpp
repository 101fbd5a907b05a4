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

#ifndef DBO_POLICY_HPP
#define DBO_POLICY_HPP

#include <cstdint>
#include <vector>

#include "dbo/acquisition.hpp"
#include "dbo/gp.hpp"

namespace dbo {

constexpr double kMinAcquisitionRange = 1e-9;

enum class ScheduleMode { kFixed, kGlie };

struct TemperatureSchedule {
  ScheduleMode mode = ScheduleMode::kGlie;
  double beta = 1.0;            // kFixed
  std::size_t grid_size = 1024; // kGlie: points used to estimate the range C_t

  void validate() const;
};

// ln(t) / max(C, 1e-9); exactly 0 at t = 1, where the Boltzmann policy is
// the uniform distribution.
double glie_beta(std::size_t t, double range);

enum class ChainInit { kGreedyStart, kRandomStart };

struct MHConfig {
  int chain_length = 500;
  int burn_in = 100;
  // Mixture of isotropic Gaussian random-walk steps; scales are fractions of
  // the domain width in each dimension.
  std::vector<double> proposal_weights{0.5, 0.5};
  std::vector<double> proposal_scales{0.1, 0.01};
  ChainInit init = ChainInit::kGreedyStart;
  int greedy_restarts = 4;
  // Test harness: when > 0, states live on a regular lattice with this many
  // points per dimension (endpoints included) and steps are rounded to it.
  std::size_t lattice_points = 0;

  void validate() const;
};

struct ChainResult {
  Point last;
  std::vector<Point> states;       // post burn-in, only when requested
  double burn_in_acceptance = 0.0; // fraction accepted during burn-in
  double acceptance = 0.0;         // over the whole chain
  bool low_acceptance = false;     // burn-in acceptance below 1%
};

// Metropolis-Hastings chain targeting exp(beta * acquisition(x)) on the
// domain box; out-of-box proposals are rejected. The acceptance test works
// on beta * (a' - a) directly, so no large exponentials are formed.
ChainResult boltzmann_chain(const GPModel& model, const AcquisitionSpec& spec,
                            const Incumbent& inc, double beta, const Box& domain,
                            const MHConfig& mh, std::uint64_t seed, bool keep_states = false);

struct BoltzmannDraw {
  Point x;
  double acceptance = 0.0;
  bool low_acceptance = false;
};

// One draw from the Boltzmann policy: the final state of a chain.
BoltzmannDraw boltzmann_sample(const GPModel& model, const AcquisitionSpec& spec,
                               const Incumbent& inc, double beta, const Box& domain,
                               const MHConfig& mh, std::uint64_t seed);

// Maps lattice indices to points and back (MHConfig::lattice_points).
Point lattice_point(const Box& domain, std::size_t points_per_dim,
                    const std::vector<std::size_t>& index);

struct GreedyConfig {
  int restarts = 4;
  // Number of shifted Sobol candidates screened; the best `restarts` of them
  // become starting points. pool <= restarts means "use the first restarts".
  int pool = 0;
  int max_evals_per_restart = 400;
};

// Multistart bounded coordinate ascent on the acquisition with a shrinking
// step. Ties between restarts go to the lowest start index.
Point greedy_argmax(const GPModel& model, const AcquisitionSpec& spec, const Incumbent& inc,
                    const Box& domain, const GreedyConfig& config, std::uint64_t seed);
Point greedy_argmax(const GPModel& model, const AcquisitionSpec& spec, const Incumbent& inc,
                    const Box& domain, int restarts, std::uint64_t seed);

// Thompson sampling: argmin of one joint posterior draw over a fresh shifted
// Sobol grid of grid_size points.
Point thompson_select(const GPModel& model, const Box& domain, std::size_t grid_size,
                      std::uint64_t seed);
// Same over explicit candidates; returns the candidate index.
std::size_t thompson_select_on(const GPModel& model, const std::vector<Point>& candidates,
                               std::uint64_t seed);

}  // namespace dbo

#endif  // DBO_POLICY_HPP
