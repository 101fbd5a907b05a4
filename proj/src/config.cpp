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

#include "dbo/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "dbo/error.hpp"
#include "dbo/objectives.hpp"

namespace dbo {

using nlohmann::json;

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kSPEI: return "SP-EI";
    case Method::kSPPI: return "SP-PI";
    case Method::kSPUCB: return "SP-UCB";
    case Method::kPDTS: return "PDTS";
    case Method::kSequentialEI: return "SequentialEI";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  for (Method m : all_methods()) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> kAll{Method::kSPEI, Method::kSPPI, Method::kSPUCB, Method::kPDTS,
                                        Method::kSequentialEI};
  return kAll;
}

std::string method_description(Method method) {
  switch (method) {
    case Method::kSPEI: return "Boltzmann policy over expected improvement, sampled by MH";
    case Method::kSPPI: return "Boltzmann policy over probability of improvement, sampled by MH";
    case Method::kSPUCB: return "Boltzmann policy over the lower confidence bound, sampled by MH";
    case Method::kPDTS: return "distributed Thompson sampling (argmin of a posterior draw)";
    case Method::kSequentialEI: return "single node, greedy expected improvement";
  }
  return "";
}

std::size_t FleetSpec::size() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.count;
  return n;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (!fleet && methods.empty()) throw ConfigError("no method given");
  if (fleet) {
    if (fleet->groups.empty() || fleet->size() == 0) throw ConfigError("fleet is empty");
    for (const auto& g : fleet->groups) {
      g.policy.acquisition.validate();
      g.policy.schedule.validate();
      g.policy.mh.validate();
    }
  } else if (n_nodes < 1) {
    throw ConfigError("n_nodes must be at least 1");
  }
  std::set<Method> seen(methods.begin(), methods.end());
  if (seen.size() != methods.size()) throw ConfigError("duplicate method");
  acquisition.validate();
  schedule.validate();
  mh.validate();
  network.validate();
  if (fit.starts < 1 || fit.evals_per_start < 1) throw ConfigError("kernel fit: starts and evals must be positive");
  if (refit_period < 1) throw ConfigError("kernel: refit_period must be positive");
  if (thompson_grid < 1) throw ConfigError("thompson_grid must be positive");
}

std::vector<std::string> ExperimentConfig::method_names() const {
  if (fleet) return {fleet->name};
  std::vector<std::string> out;
  for (Method m : methods) out.emplace_back(to_string(m));
  return out;
}

namespace {

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
    if (!ok) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where, T fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t> ||
                  std::is_same_v<T, int> || std::is_same_v<T, std::int64_t>) {
      if (!it->is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (it->is_number_integer() && !it->is_number_unsigned() && it->get<std::int64_t>() < 0) {
          throw ConfigError(where + "." + key + ": must be nonnegative");
        }
      }
    }
    return it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

TickRange parse_range(const json& v, const std::string& where) {
  if (v.is_number_integer()) return {v.get<std::int64_t>(), v.get<std::int64_t>()};
  if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer()) {
    return {v[0].get<std::int64_t>(), v[1].get<std::int64_t>()};
  }
  throw ConfigError(where + ": expected an integer or [lo, hi]");
}

void parse_acquisition(const json& j, AcquisitionSpec& spec, GreedyConfig* greedy,
                       std::size_t* thompson_grid, bool allow_kind, const std::string& where) {
  if (allow_kind) {
    check_keys(j, where, {"kind", "xi", "kappa", "kappa_schedule", "optimizer", "thompson_grid"});
    if (j.contains("kind")) spec.kind = acquisition_kind_from_string(get<std::string>(j, "kind", where, ""));
  } else {
    check_keys(j, where, {"xi", "kappa", "kappa_schedule", "optimizer", "thompson_grid"});
  }
  spec.xi = get<double>(j, "xi", where, spec.xi);
  spec.kappa = get<double>(j, "kappa", where, spec.kappa);
  spec.kappa_schedule = get<bool>(j, "kappa_schedule", where, spec.kappa_schedule);
  if (j.contains("optimizer")) {
    if (!greedy) throw ConfigError(where + ": optimizer not allowed here");
    const json& o = j["optimizer"];
    check_keys(o, where + ".optimizer", {"restarts", "pool", "max_evals"});
    greedy->restarts = get<int>(o, "restarts", where + ".optimizer", greedy->restarts);
    greedy->pool = get<int>(o, "pool", where + ".optimizer", greedy->pool);
    greedy->max_evals_per_restart = get<int>(o, "max_evals", where + ".optimizer", greedy->max_evals_per_restart);
  }
  if (j.contains("thompson_grid")) {
    if (!thompson_grid) throw ConfigError(where + ": thompson_grid not allowed here");
    *thompson_grid = get<std::size_t>(j, "thompson_grid", where, *thompson_grid);
  }
}

void parse_schedule(const json& j, TemperatureSchedule& s, bool* local_t, const std::string& where) {
  check_keys(j, where, {"mode", "beta", "grid_size", "t"});
  if (j.contains("mode")) {
    std::string m = lower(get<std::string>(j, "mode", where, ""));
    if (m == "glie") {
      s.mode = ScheduleMode::kGlie;
    } else if (m == "fixed") {
      s.mode = ScheduleMode::kFixed;
    } else {
      throw ConfigError(where + ".mode: expected 'glie' or 'fixed'");
    }
  }
  s.beta = get<double>(j, "beta", where, s.beta);
  s.grid_size = get<std::size_t>(j, "grid_size", where, s.grid_size);
  if (j.contains("t")) {
    std::string t = lower(get<std::string>(j, "t", where, ""));
    if (t != "known" && t != "local") throw ConfigError(where + ".t: expected 'known' or 'local'");
    if (!local_t) throw ConfigError(where + ".t: not allowed here");
    *local_t = t == "local";
  }
}

void parse_mh(const json& j, MHConfig& mh, const std::string& where) {
  check_keys(j, where, {"chain_length", "burn_in", "proposal_weights", "proposal_scales", "init",
                        "greedy_restarts"});
  mh.chain_length = get<int>(j, "chain_length", where, mh.chain_length);
  mh.burn_in = get<int>(j, "burn_in", where, mh.burn_in);
  mh.proposal_weights = get<std::vector<double>>(j, "proposal_weights", where, mh.proposal_weights);
  mh.proposal_scales = get<std::vector<double>>(j, "proposal_scales", where, mh.proposal_scales);
  if (j.contains("init")) {
    std::string init = lower(get<std::string>(j, "init", where, ""));
    if (init == "greedy") {
      mh.init = ChainInit::kGreedyStart;
    } else if (init == "random") {
      mh.init = ChainInit::kRandomStart;
    } else {
      throw ConfigError(where + ".init: expected 'greedy' or 'random'");
    }
  }
  mh.greedy_restarts = get<int>(j, "greedy_restarts", where, mh.greedy_restarts);
}

void parse_kernel(const json& j, ExperimentConfig& c) {
  const std::string where = "kernel";
  if (j.is_string()) {
    c.kernel = kernel_family_from_string(j.get<std::string>());
    return;
  }
  check_keys(j, where, {"family", "ard", "fixed", "lengthscales", "signal_variance", "rq_shape",
                        "noise_variance", "standardize", "warm_start", "refit_period",
                        "refit_early_factor", "fit"});
  if (j.contains("family")) c.kernel = kernel_family_from_string(get<std::string>(j, "family", where, ""));
  c.fit.ard = get<bool>(j, "ard", where, c.fit.ard);
  c.fit.fixed = get<bool>(j, "fixed", where, c.fit.fixed);
  c.standardize = get<bool>(j, "standardize", where, c.standardize);
  c.fit.standardize = c.standardize;
  c.warm_start = get<bool>(j, "warm_start", where, c.warm_start);
  c.refit_period = get<std::size_t>(j, "refit_period", where, c.refit_period);
  c.refit_early_factor = get<std::size_t>(j, "refit_early_factor", where, c.refit_early_factor);
  if (j.contains("lengthscales") || j.contains("signal_variance") || j.contains("rq_shape")) {
    KernelSpec k;
    k.family = c.kernel;
    const json& ls = j.contains("lengthscales") ? j["lengthscales"] : json(0.25);
    if (ls.is_number()) {
      k.lengthscales = {ls.get<double>()};
    } else {
      k.lengthscales = get<std::vector<double>>(j, "lengthscales", where, {});
    }
    k.signal_variance = get<double>(j, "signal_variance", where, 1.0);
    k.rq_shape = get<double>(j, "rq_shape", where, k.rq_shape);
    k.validate();
    c.fit.initial = k;
  } else if (c.fit.fixed) {
    throw ConfigError("kernel: fixed hyperparameters need lengthscales");
  }
  c.fit.initial_noise = get<double>(j, "noise_variance", where, c.fit.initial_noise);
  if (j.contains("fit")) {
    const json& f = j["fit"];
    const std::string w = "kernel.fit";
    check_keys(f, w, {"starts", "evals_per_start", "lengthscale_lo", "lengthscale_hi", "signal_lo",
                      "signal_hi", "noise_lo", "noise_hi"});
    c.fit.starts = get<int>(f, "starts", w, c.fit.starts);
    c.fit.evals_per_start = get<int>(f, "evals_per_start", w, c.fit.evals_per_start);
    c.fit.lengthscale_lo = get<double>(f, "lengthscale_lo", w, c.fit.lengthscale_lo);
    c.fit.lengthscale_hi = get<double>(f, "lengthscale_hi", w, c.fit.lengthscale_hi);
    c.fit.signal_lo = get<double>(f, "signal_lo", w, c.fit.signal_lo);
    c.fit.signal_hi = get<double>(f, "signal_hi", w, c.fit.signal_hi);
    c.fit.noise_lo = get<double>(f, "noise_lo", w, c.fit.noise_lo);
    c.fit.noise_hi = get<double>(f, "noise_hi", w, c.fit.noise_hi);
  }
}

void parse_network(const json& j, NetworkConfig& n) {
  const std::string where = "network";
  check_keys(j, where, {"latency", "eval_ticks", "drop_prob", "piggyback", "heartbeat_ticks",
                        "max_drain_ticks", "parallel"});
  if (j.contains("latency")) n.latency = parse_range(j["latency"], where + ".latency");
  if (j.contains("eval_ticks")) n.eval_ticks = parse_range(j["eval_ticks"], where + ".eval_ticks");
  n.drop_prob = get<double>(j, "drop_prob", where, n.drop_prob);
  n.piggyback = get<bool>(j, "piggyback", where, n.piggyback);
  n.heartbeat_ticks = get<std::int64_t>(j, "heartbeat_ticks", where, n.heartbeat_ticks);
  n.max_drain_ticks = get<std::int64_t>(j, "max_drain_ticks", where, n.max_drain_ticks);
  n.parallel = get<bool>(j, "parallel", where, n.parallel);
}

PolicyConfig policy_for_group(const json& g, const ExperimentConfig& base, std::size_t index) {
  const std::string where = "fleet[" + std::to_string(index) + "]";
  check_keys(g, where, {"count", "policy", "acquisition", "schedule", "mh"});
  PolicyConfig pc;
  pc.acquisition = base.acquisition;
  pc.schedule = base.schedule;
  pc.mh = base.mh;
  pc.greedy = base.greedy;
  pc.thompson_grid = base.thompson_grid;
  std::string kind = lower(get<std::string>(g, "policy", where, "boltzmann"));
  if (kind == "boltzmann") {
    pc.kind = PolicyKind::kBoltzmann;
  } else if (kind == "greedy") {
    pc.kind = PolicyKind::kGreedy;
  } else if (kind == "thompson") {
    pc.kind = PolicyKind::kThompson;
  } else {
    throw ConfigError(where + ".policy: expected 'boltzmann', 'greedy' or 'thompson'");
  }
  if (g.contains("acquisition")) {
    parse_acquisition(g["acquisition"], pc.acquisition, &pc.greedy, &pc.thompson_grid, true,
                      where + ".acquisition");
  }
  if (g.contains("schedule")) parse_schedule(g["schedule"], pc.schedule, nullptr, where + ".schedule");
  if (g.contains("mh")) parse_mh(g["mh"], pc.mh, where + ".mh");
  return pc;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  check_keys(doc, "config", {"objective", "objective_params", "method", "fleet", "n_nodes", "mode",
                             "trials", "budget", "p", "seed", "kernel", "acquisition", "schedule",
                             "mh", "network", "output_dir"});
  ExperimentConfig c;
  const std::string where = "config";
  c.objective = get<std::string>(doc, "objective", where, c.objective);
  if (doc.contains("objective_params")) {
    if (!doc["objective_params"].is_object()) throw ConfigError("objective_params: expected an object");
    c.objective_params = doc["objective_params"];
  }
  // Fail early on unknown objectives and parameters.
  (void)get_objective(c.objective, c.objective_params);

  if (doc.contains("method") && doc.contains("fleet")) throw ConfigError("give either method or fleet, not both");
  if (doc.contains("method")) {
    const json& m = doc["method"];
    c.methods.clear();
    if (m.is_string() && m.get<std::string>() == "all") {
      c.methods = all_methods();
    } else if (m.is_string()) {
      c.methods.push_back(method_from_string(m.get<std::string>()));
    } else if (m.is_array()) {
      for (const auto& e : m) {
        if (!e.is_string()) throw ConfigError("method: expected names");
        c.methods.push_back(method_from_string(e.get<std::string>()));
      }
    } else {
      throw ConfigError("method: expected a name or a list of names");
    }
  }
  c.n_nodes = get<std::size_t>(doc, "n_nodes", where, c.n_nodes);
  if (doc.contains("mode")) {
    std::string mode = lower(get<std::string>(doc, "mode", where, ""));
    if (mode == "sync" || mode == "syncbatch") {
      c.mode = NetworkMode::kSyncBatch;
    } else if (mode == "async") {
      c.mode = NetworkMode::kAsync;
    } else {
      throw ConfigError("mode: expected 'sync' or 'async'");
    }
  }
  c.trials = get<std::size_t>(doc, "trials", where, c.trials);
  c.budget = get<std::size_t>(doc, "budget", where, c.budget);
  c.p = get<std::size_t>(doc, "p", where, c.p);
  c.seed = get<std::uint64_t>(doc, "seed", where, c.seed);
  if (doc.contains("kernel")) parse_kernel(doc["kernel"], c);
  if (doc.contains("acquisition")) {
    parse_acquisition(doc["acquisition"], c.acquisition, &c.greedy, &c.thompson_grid, false, "acquisition");
  }
  if (doc.contains("schedule")) parse_schedule(doc["schedule"], c.schedule, &c.local_t, "schedule");
  if (doc.contains("mh")) parse_mh(doc["mh"], c.mh, "mh");
  if (doc.contains("network")) parse_network(doc["network"], c.network);
  c.network.mode = c.mode;
  c.output_dir = get<std::string>(doc, "output_dir", where, c.output_dir);

  if (doc.contains("fleet")) {
    const json& f = doc["fleet"];
    FleetSpec fleet;
    const json* groups = &f;
    if (f.is_object()) {
      check_keys(f, "fleet", {"name", "groups"});
      fleet.name = get<std::string>(f, "name", "fleet", fleet.name);
      if (!f.contains("groups")) throw ConfigError("fleet: missing groups");
      groups = &f["groups"];
    }
    if (!groups->is_array()) throw ConfigError("fleet: expected a list of node groups");
    for (std::size_t i = 0; i < groups->size(); ++i) {
      const json& g = (*groups)[i];
      FleetGroup group;
      group.policy = policy_for_group(g, c, i);
      group.count = get<std::size_t>(g, "count", "fleet[" + std::to_string(i) + "]", 1);
      fleet.groups.push_back(std::move(group));
    }
    if (doc.contains("n_nodes") && c.n_nodes != fleet.size()) {
      throw ConfigError("n_nodes does not match the fleet size");
    }
    c.n_nodes = fleet.size();
    c.methods.clear();
    c.fleet = std::move(fleet);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return parse_config(doc);
}

namespace {

json range_json(const TickRange& r) { return json::array({r.lo, r.hi}); }

json schedule_json(const TemperatureSchedule& s) {
  return {{"mode", s.mode == ScheduleMode::kGlie ? "glie" : "fixed"}, {"beta", s.beta},
          {"grid_size", s.grid_size}};
}

json mh_json(const MHConfig& mh) {
  return {{"chain_length", mh.chain_length},
          {"burn_in", mh.burn_in},
          {"proposal_weights", mh.proposal_weights},
          {"proposal_scales", mh.proposal_scales},
          {"init", mh.init == ChainInit::kGreedyStart ? "greedy" : "random"},
          {"greedy_restarts", mh.greedy_restarts}};
}

}  // namespace

json to_json(const ExperimentConfig& c) {
  json doc;
  doc["objective"] = c.objective;
  doc["objective_params"] = c.objective_params;
  if (c.fleet) {
    json groups = json::array();
    for (const auto& g : c.fleet->groups) {
      const char* kind = g.policy.kind == PolicyKind::kBoltzmann ? "boltzmann"
                         : g.policy.kind == PolicyKind::kGreedy  ? "greedy"
                                                                 : "thompson";
      json acq = {{"kind", std::string(to_string(g.policy.acquisition.kind))},
                  {"xi", g.policy.acquisition.xi},
                  {"kappa", g.policy.acquisition.kappa},
                  {"kappa_schedule", g.policy.acquisition.kappa_schedule}};
      groups.push_back({{"count", g.count}, {"policy", kind}, {"acquisition", acq},
                        {"schedule", schedule_json(g.policy.schedule)}, {"mh", mh_json(g.policy.mh)}});
    }
    doc["fleet"] = {{"name", c.fleet->name}, {"groups", groups}};
  } else {
    json names = json::array();
    for (Method m : c.methods) names.push_back(std::string(to_string(m)));
    doc["method"] = names;
    doc["n_nodes"] = c.n_nodes;
  }
  doc["mode"] = c.mode == NetworkMode::kSyncBatch ? "sync" : "async";
  doc["trials"] = c.trials;
  doc["budget"] = c.budget;
  doc["p"] = c.p;
  doc["seed"] = c.seed;
  json kernel = {{"family", std::string(to_string(c.kernel))},
                 {"ard", c.fit.ard},
                 {"fixed", c.fit.fixed},
                 {"standardize", c.standardize},
                 {"warm_start", c.warm_start},
                 {"refit_period", c.refit_period},
                 {"refit_early_factor", c.refit_early_factor},
                 {"noise_variance", c.fit.initial_noise},
                 {"fit",
                  {{"starts", c.fit.starts},
                   {"evals_per_start", c.fit.evals_per_start},
                   {"lengthscale_lo", c.fit.lengthscale_lo},
                   {"lengthscale_hi", c.fit.lengthscale_hi},
                   {"signal_lo", c.fit.signal_lo},
                   {"signal_hi", c.fit.signal_hi},
                   {"noise_lo", c.fit.noise_lo},
                   {"noise_hi", c.fit.noise_hi}}}};
  if (c.fit.initial) {
    kernel["lengthscales"] = c.fit.initial->lengthscales;
    kernel["signal_variance"] = c.fit.initial->signal_variance;
    kernel["rq_shape"] = c.fit.initial->rq_shape;
  }
  doc["kernel"] = kernel;
  doc["acquisition"] = {{"xi", c.acquisition.xi},
                        {"kappa", c.acquisition.kappa},
                        {"kappa_schedule", c.acquisition.kappa_schedule},
                        {"optimizer",
                         {{"restarts", c.greedy.restarts},
                          {"pool", c.greedy.pool},
                          {"max_evals", c.greedy.max_evals_per_restart}}},
                        {"thompson_grid", c.thompson_grid}};
  json schedule = schedule_json(c.schedule);
  schedule["t"] = c.local_t ? "local" : "known";
  doc["schedule"] = schedule;
  doc["mh"] = mh_json(c.mh);
  doc["network"] = {{"latency", range_json(c.network.latency)},
                    {"eval_ticks", range_json(c.network.eval_ticks)},
                    {"drop_prob", c.network.drop_prob},
                    {"piggyback", c.network.piggyback},
                    {"heartbeat_ticks", c.network.heartbeat_ticks},
                    {"max_drain_ticks", c.network.max_drain_ticks},
                    {"parallel", c.network.parallel}};
  doc["output_dir"] = c.output_dir;
  return doc;
}

// ---------------------------------------------------------------------------
// Presets

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> kNames{"smoke", "branin", "figure3", "gp-within", "gp-outof"};
  return kNames;
}

namespace {

ExperimentConfig bundle(const std::string& objective, json params, const std::string& dir) {
  ExperimentConfig c;
  c.objective = objective;
  c.objective_params = std::move(params);
  c.methods = all_methods();
  c.n_nodes = 10;
  c.mode = NetworkMode::kSyncBatch;
  c.trials = 10;
  c.budget = 100;
  c.p = 2;
  c.seed = 1;
  c.output_dir = dir;
  return c;
}

}  // namespace

Preset get_preset(const std::string& name, const std::string& root) {
  Preset preset;
  preset.name = name;
  const std::string base = root + "/" + name;
  if (name == "smoke") {
    preset.description = "tiny Branin run of SP-EI, PDTS and SequentialEI (seconds)";
    ExperimentConfig c = bundle("branin", json::object(), base);
    c.methods = {Method::kSPEI, Method::kPDTS, Method::kSequentialEI};
    c.n_nodes = 4;
    c.trials = 2;
    c.budget = 8;
    preset.runs.push_back(c);
  } else if (name == "branin") {
    preset.description = "all methods on Branin: 10 nodes, batches of 10, p = 2, 100 evaluations, 10 trials";
    preset.runs.push_back(bundle("branin", json::object(), base));
  } else if (name == "figure3") {
    preset.description = "all methods on every benchmark with a known minimum, same protocol as 'branin'";
    for (const auto& info : objective_registry()) {
      if (info.name == "gp_sample") continue;
      preset.runs.push_back(bundle(info.name, json::object(), base + "/" + info.name));
    }
  } else if (name == "gp-within" || name == "gp-outof") {
    const bool within = name == "gp-within";
    preset.description = within ? "objectives drawn from a Matern-5/2 GP, Matern-5/2 surrogate, 60 evaluations"
                                : "objectives drawn from a rational quadratic GP, Matern-5/2 surrogate, 60 evaluations";
    json params = {{"dim", 2}, {"kernel", within ? "matern52" : "rq"}, {"lengthscale", 0.1}, {"anchors", 1000}};
    ExperimentConfig c = bundle("gp_sample", params, base);
    c.budget = 60;
    preset.runs.push_back(c);
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
  }
  for (auto& run : preset.runs) run.validate();
  return preset;
}

}  // namespace dbo
