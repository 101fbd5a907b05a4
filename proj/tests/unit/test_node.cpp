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

#include <algorithm>
#include <random>
#include <set>

#include <boost/math/distributions/chi_squared.hpp>
#include <doctest.h>

#include "dbo/error.hpp"
#include "dbo/lowdisc.hpp"
#include "dbo/node.hpp"
#include "dbo/objectives.hpp"
#include "helpers.hpp"

using namespace dbo;

namespace {

NodeConfig node_config(std::uint64_t id, const Objective& obj, PolicyKind kind, std::size_t p, std::size_t budget,
                       std::size_t nodes = 4) {
  NodeConfig c;
  c.node_id = id;
  c.domain = obj.bounds;
  c.policy.kind = kind;
  c.policy.mh.chain_length = 200;
  c.policy.mh.burn_in = 50;
  c.policy.schedule.grid_size = 128;
  c.policy.greedy = {2, 32, 100};
  c.policy.thompson_grid = 64;
  c.fit.starts = 2;
  c.fit.evals_per_start = 30;
  c.p = p;
  c.budget = budget;
  c.seed = 77;
  c.ld_table = std::make_shared<const std::vector<Point>>(sobol_points(nodes * std::max<std::size_t>(p, 6), obj.dim));
  return c;
}

// Fit depends only on the record set: no warm start, refit on every change.
NodeConfig pure(NodeConfig c) {
  c.warm_start = false;
  c.refit_early_factor = 1'000'000;
  return c;
}

std::vector<BroadcastMessage> history_of(const Node& n) {
  std::vector<BroadcastMessage> out;
  for (const auto& [k, r] : n.dataset()) out.push_back({r});
  return out;
}

}  // namespace

TEST_CASE("init_design: first point and partition") {
  auto table = sobol_points(100, 1);
  CHECK(init_design(0, 1, 1, Box({0.0}, {1.0}), table) == std::vector<Point>{{0.5}});
  auto a = init_design(0, 5, 1, Box({0.0}, {1.0}), table);
  auto b = init_design(1, 5, 1, Box({0.0}, {1.0}), table);
  for (int i = 0; i < 5; ++i) {
    CHECK(a[i] == table[i]);
    CHECK(b[i] == table[5 + i]);
  }
  CHECK_THROWS_AS(init_design(20, 5, 1, Box({0.0}, {1.0}), table), ConfigError);
  CHECK_THROWS_AS(init_design(0, 5, 2, Box({0.0}, {1.0}), table), InvalidArgument);
}

TEST_CASE("init_design: fleet union beats random points on star discrepancy") {
  auto table = sobol_points(50, 2);
  std::vector<Point> all;
  for (std::uint64_t k = 0; k < 10; ++k) {
    auto part = init_design(k, 5, 2, Box::unit(2), table);
    all.insert(all.end(), part.begin(), part.end());
  }
  CHECK(std::set<Point>(all.begin(), all.end()).size() == 50);
  std::vector<double> random_disc;
  for (std::uint64_t s = 0; s < 20; ++s) {
    std::mt19937_64 rng(s);
    random_disc.push_back(oracle::star_discrepancy_2d(testing::uniform_points(50, 2, rng)));
  }
  std::nth_element(random_disc.begin(), random_disc.begin() + 10, random_disc.end());
  CHECK(oracle::star_discrepancy_2d(all) < random_disc[10]);
}

TEST_CASE("node: default p, init phase and budget") {
  Objective obj = get_objective("branin");
  NodeConfig c = node_config(1, obj, PolicyKind::kBoltzmann, 0, 8);
  CHECK(c.init_points() == 6);
  Node n(c);
  auto init = init_design(1, 6, 2, obj.bounds, *c.ld_table);
  for (std::size_t i = 0; i < 8; ++i) {
    auto r = n.step(obj);
    REQUIRE(r.has_value());
    CHECK(r->info.init == (i < 6));
    if (i < 6) CHECK(r->message.record.x == init[i]);
    CHECK(r->message.record.seq == i);
    CHECK(r->message.record.node_id == 1);
  }
  CHECK(n.exhausted());
  CHECK_FALSE(n.step(obj).has_value());
  CHECK(n.known() == 8);

  NodeConfig no_table = c;
  no_table.ld_table = nullptr;
  CHECK_THROWS_AS(Node{no_table}, ConfigError);
  NodeConfig short_table = c;
  short_table.ld_table = std::make_shared<const std::vector<Point>>(sobol_points(7, 2));
  CHECK_THROWS_AS(Node{short_table}, ConfigError);
}

TEST_CASE("node: ingest is idempotent and empty inboxes change nothing") {
  Objective obj = get_objective("branin");
  Node a(node_config(0, obj, PolicyKind::kGreedy, 3, 5));
  while (a.step(obj)) {}
  auto msgs = history_of(a);

  Node b(node_config(1, obj, PolicyKind::kGreedy, 3, 5));
  CHECK(b.ingest({}) == 0);
  CHECK(b.known() == 0);
  CHECK(b.ingest(msgs) == 5);
  CHECK(b.ingest(msgs) == 0);
  CHECK(b.known() == 5);
  BroadcastMessage bad = msgs[2];
  bad.record.y += 1.0;
  CHECK_THROWS_AS(b.ingest(std::span<const BroadcastMessage>(&bad, 1)), ProtocolViolation);
}

TEST_CASE("node: delivery order does not change the posterior bits") {
  Objective obj = get_objective("branin");
  Node a(node_config(0, obj, PolicyKind::kGreedy, 4, 9));
  while (a.step(obj)) {}
  auto msgs = history_of(a);
  std::mt19937_64 rng(3);
  Node n1(node_config(2, obj, PolicyKind::kGreedy, 4, 9)), n2(node_config(2, obj, PolicyKind::kGreedy, 4, 9));
  n1.ingest(msgs);
  std::shuffle(msgs.begin(), msgs.end(), rng);
  n2.ingest(msgs);
  const GPModel& m1 = n1.refresh_model();
  const GPModel& m2 = n2.refresh_model();
  for (const auto& x : testing::uniform_points(20, 2, rng)) {
    Point q = obj.bounds.from_unit(x);
    CHECK(m1.posterior(q).mean == m2.posterior(q).mean);
    CHECK(m1.posterior(q).variance == m2.posterior(q).variance);
  }
}

TEST_CASE("node: equal datasets and seeds select equal points") {
  Objective obj = get_objective("camelback");
  for (PolicyKind kind : {PolicyKind::kBoltzmann, PolicyKind::kGreedy, PolicyKind::kThompson}) {
    Node a(node_config(0, obj, kind, 4, 6)), b(node_config(0, obj, kind, 4, 6));
    for (int i = 0; i < 6; ++i) CHECK(a.step(obj, 100 + i)->message.record.x == b.step(obj, 100 + i)->message.record.x);
  }
}

TEST_CASE("node: different histories with the same records give the same next query") {
  Objective obj = get_objective("branin");
  Node src(pure(node_config(0, obj, PolicyKind::kGreedy, 4, 10)));
  while (src.step(obj)) {}
  auto msgs = history_of(src);

  Node one_by_one(pure(node_config(3, obj, PolicyKind::kBoltzmann, 2, 4)));
  Node at_once(pure(node_config(3, obj, PolicyKind::kBoltzmann, 2, 4)));
  for (int i = 0; i < 2; ++i) {
    one_by_one.step(obj, i);
    at_once.step(obj, i);
  }
  for (const auto& m : msgs) {
    one_by_one.ingest(std::span<const BroadcastMessage>(&m, 1));
    one_by_one.refresh_model();
  }
  at_once.ingest(msgs);
  CHECK(one_by_one.step(obj, 1234)->message.record.x == at_once.step(obj, 1234)->message.record.x);
}

TEST_CASE("node: first stochastic step with t = 1 is uniform") {
  Objective obj;
  obj.name = "line";
  obj.dim = 1;
  obj.bounds = Box({0.0}, {1.0});
  obj.eval = [](std::span<const double> x) { return std::sin(7.0 * x[0]); };
  const std::size_t draws = 20000;
  std::vector<double> counts(101, 0.0);
  NodeConfig c = node_config(0, obj, PolicyKind::kBoltzmann, 1, 2);
  c.policy.mh.lattice_points = 101;
  for (std::size_t s = 0; s < draws; ++s) {
    c.seed = s;
    Node n(c);
    n.step(obj);
    auto r = n.step(obj);
    CHECK(r->info.t == 1);
    CHECK(r->info.beta == 0.0);
    counts[static_cast<std::size_t>(std::lround(r->message.record.x[0] * 100))] += 1.0;
  }
  double stat = 0.0;
  const double expect = draws / 101.0;
  for (double cnt : counts) stat += (cnt - expect) * (cnt - expect) / expect;
  CHECK(stat <= boost::math::quantile(boost::math::chi_squared(100.0), 0.99));
}

TEST_CASE("node: join") {
  Objective obj = get_objective("branin");
  Node fresh = Node::join({}, node_config(2, obj, PolicyKind::kGreedy, 3, 4));
  CHECK(fresh.in_init());
  CHECK(fresh.step(obj)->message.record.x == init_design(2, 3, 2, obj.bounds, *node_config(2, obj, PolicyKind::kGreedy, 3, 4).ld_table)[0]);

  // Two incumbents exchange everything, then a third node joins with the full history.
  Node a(pure(node_config(0, obj, PolicyKind::kGreedy, 3, 6))), b(pure(node_config(1, obj, PolicyKind::kBoltzmann, 3, 6)));
  for (int round = 0; round < 6; ++round) {
    auto ra = a.step(obj);
    auto rb = b.step(obj);
    a.ingest(std::span<const BroadcastMessage>(&rb->message, 1));
    b.ingest(std::span<const BroadcastMessage>(&ra->message, 1));
  }
  auto hist = history_of(a);
  std::mt19937_64 rng(9);
  std::shuffle(hist.begin(), hist.end(), rng);
  Node j = Node::join(hist, pure(node_config(5, obj, PolicyKind::kBoltzmann, 3, 6)));
  CHECK_FALSE(j.in_init());
  CHECK(j.known() == 12);
  const GPModel& ma = a.refresh_model();
  const GPModel& mj = j.refresh_model();
  for (const auto& x : testing::uniform_points(30, 2, rng)) {
    Point q = obj.bounds.from_unit(x);
    CHECK(std::abs(ma.posterior(q).mean - mj.posterior(q).mean) <= 1e-12);
    CHECK(std::abs(ma.posterior(q).variance - mj.posterior(q).variance) <= 1e-12);
  }
  auto sorted = history_of(a);
  Node j2 = Node::join(sorted, pure(node_config(5, obj, PolicyKind::kBoltzmann, 3, 6)));
  CHECK(j2.step(obj)->message.record.x == j.step(obj)->message.record.x);
}

TEST_CASE("node: incumbent never gets worse and the budget is met without any delivery") {
  Objective obj = get_objective("camelback");
  Node n(node_config(0, obj, PolicyKind::kBoltzmann, 3, 12));
  double rho = INFINITY;
  std::size_t evals = 0;
  while (auto r = n.step(obj)) {
    ++evals;
    const double now = Incumbent::of(n.dataset()).rho;
    CHECK(now <= rho);
    rho = now;
  }
  CHECK(evals == 12);
}
