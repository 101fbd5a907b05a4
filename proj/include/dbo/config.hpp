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

#ifndef DBO_CONFIG_HPP
#define DBO_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dbo/netsim.hpp"
#include "dbo/node.hpp"
#include "dbo/vendor_json.hpp"

namespace dbo {

// Named comparison methods. Each maps to a per-node policy; SequentialEI
// runs a single greedy-EI node holding the whole fleet's initial design.
enum class Method { kSPEI, kSPPI, kSPUCB, kPDTS, kSequentialEI };

std::string_view to_string(Method method);
Method method_from_string(std::string_view name);
const std::vector<Method>& all_methods();
std::string method_description(Method method);

// One group of identical nodes in a custom fleet.
struct FleetGroup {
  std::size_t count = 1;
  PolicyConfig policy;
};

struct FleetSpec {
  std::string name = "fleet";
  std::vector<FleetGroup> groups;
  std::size_t size() const;
};

enum class CiMethod { kNormal, kStudentT };

struct ExperimentConfig {
  std::string objective = "branin";
  nlohmann::json objective_params = nlohmann::json::object();
  std::vector<Method> methods{Method::kSPEI};
  std::optional<FleetSpec> fleet;  // replaces `methods` when set
  std::size_t n_nodes = 10;
  NetworkMode mode = NetworkMode::kSyncBatch;
  std::size_t trials = 10;
  std::size_t budget = 100;  // global evaluations after initialization
  std::size_t p = 0;         // per node; 0 means 2d + 2
  std::uint64_t seed = 0;

  // Surrogate.
  KernelFamily kernel = KernelFamily::kMatern52;
  FitConfig fit;
  bool warm_start = true;
  std::size_t refit_early_factor = 20;
  std::size_t refit_period = 5;
  bool standardize = true;

  // Policy knobs shared by the named methods (kind comes from the method).
  AcquisitionSpec acquisition;
  TemperatureSchedule schedule;
  bool local_t = false;
  MHConfig mh;
  GreedyConfig greedy{8, 256, 400};
  std::size_t thompson_grid = 512;

  NetworkConfig network;  // mode is taken from `mode`
  std::string output_dir = "out";

  // Harness options (flags, not part of the config file).
  bool post_init_index = false;
  CiMethod ci = CiMethod::kNormal;

  void validate() const;
  std::vector<std::string> method_names() const;
};

// Parses a config document. Unknown keys at any level are errors.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& config);

struct Preset {
  std::string name;
  std::string description;
  std::vector<ExperimentConfig> runs;  // each with its own output_dir
};

const std::vector<std::string>& preset_names();
Preset get_preset(const std::string& name, const std::string& output_root = "out");

}  // namespace dbo

#endif  // DBO_CONFIG_HPP
