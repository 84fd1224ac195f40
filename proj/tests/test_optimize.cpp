// Copyright 2026 The Authors.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlt/instance_gen.hpp"
#include "nlt/optimize.hpp"

using namespace nlt;

namespace {

InfoNetwork hub_net(int leaves) {
  std::vector<std::string> labels{"h"};
  std::vector<LabeledEdge> edges;
  for (int i = 1; i <= leaves; ++i) {
    labels.push_back("l" + std::to_string(i));
    edges.push_back({labels.back(), "h", 1.0});
  }
  return build_network(labels, edges);
}

Evaluator exact_eval() {
  Evaluator ev;
  ev.kind = EvaluatorKind::exact_dag;
  return ev;
}

}  // namespace

TEST_CASE("evaluator names round trip") {
  CHECK(evaluator_from_name("exact-dag") == EvaluatorKind::exact_dag);
  CHECK(evaluator_from_name("cells") == EvaluatorKind::cells);
  CHECK(evaluator_from_name("mc") == EvaluatorKind::monte_carlo);
  CHECK(evaluator_from_name("monte-carlo") == EvaluatorKind::monte_carlo);
  CHECK_THROWS_AS(evaluator_from_name("unknown"), Error);
}

TEST_CASE("marginal gain from the empty pair is the singleton value") {
  Xoshiro256pp rng(3);
  RandomNetOptions opt;
  opt.nodes = 6;
  opt.max_edges = 12;
  const InfoNetwork net = random_dag(rng, opt);
  const SeedSets empty(net, {}, {});
  const Evaluator ev = exact_eval();
  for (NodeId w = 0; w < net.non_void_count(); ++w) {
    const double transient_gain = marginal_gain(net, empty, w, SeedRole::transient, 3, ev);
    const double singleton = expected_influence_dag(net, SeedSets(net, NodeSet{w}, {}), 3);
    CHECK(std::abs(transient_gain - singleton) < 1e-12);
    const double permanent_gain = marginal_gain(net, empty, w, SeedRole::permanent, 3, ev);
    const double perm_singleton = expected_influence_dag(net, SeedSets(net, {}, NodeSet{w}), 3);
    CHECK(std::abs(permanent_gain - perm_singleton) < 1e-12);
  }
}

TEST_CASE("seeded candidates are rejected") {
  const InfoNetwork net = hub_net(2);
  const SeedSets seeds(net, NodeSet{net.resolve("l1")}, NodeSet{net.resolve("h")});
  CHECK_THROWS_AS(
      marginal_gain(net, seeds, net.resolve("h"), SeedRole::transient, 2, exact_eval()),
      Error);
  CHECK_THROWS_AS(
      marginal_gain(net, seeds, net.resolve("l1"), SeedRole::permanent, 2, exact_eval()),
      Error);
}

TEST_CASE("decomposition route equals the evaluator difference") {
  Xoshiro256pp rng(7);
  for (int rep = 0; rep < 15; ++rep) {
    RandomNetOptions opt;
    opt.nodes = 2 + static_cast<int>(rng.next_below(6));
    opt.max_edges = 14;
    const InfoNetwork net = random_dag(rng, opt);
    const SeedSets seeds = random_seed_sets(rng, net, true);
    const int horizon = 1 + static_cast<int>(rng.next_below(4));
    const Evaluator ev = exact_eval();
    for (NodeId w = 0; w < net.non_void_count(); ++w) {
      if (seeds.transient.contains(w) || seeds.permanent.contains(w)) continue;
      const double via_decomposition =
          marginal_gain(net, seeds, w, SeedRole::transient, horizon, ev);
      SeedSets grown = seeds;
      grown.transient.insert(w);
      const double via_difference =
          expected_influence_dag(net, grown, horizon) -
          expected_influence_dag(net, seeds, horizon);
      CHECK(std::abs(via_decomposition - via_difference) < 1e-9);
    }
  }
}

TEST_CASE("permanent gains dominate transient gains; gains are non-negative") {
  Xoshiro256pp rng(9);
  for (int rep = 0; rep < 15; ++rep) {
    RandomNetOptions opt;
    opt.nodes = 2 + static_cast<int>(rng.next_below(6));
    opt.max_edges = 14;
    const InfoNetwork net = random_dag(rng, opt);
    const SeedSets seeds = random_seed_sets(rng, net, true);
    const int horizon = 1 + static_cast<int>(rng.next_below(4));
    const Evaluator ev = exact_eval();
    for (NodeId w = 0; w < net.non_void_count(); ++w) {
      if (seeds.transient.contains(w) || seeds.permanent.contains(w)) continue;
      const double tr = marginal_gain(net, seeds, w, SeedRole::transient, horizon, ev);
      const double pm = marginal_gain(net, seeds, w, SeedRole::permanent, horizon, ev);
      CHECK(tr >= -1e-12);
      CHECK(pm >= tr - 1e-12);
    }
  }
}

TEST_CASE("no budget means the empty solution") {
  const InfoNetwork net = hub_net(3);
  const Budget budget{0.5, 1.0, 1.0};
  const Solution sol = greedy_max(net, budget, 2, exact_eval());
  CHECK(sol.seeds.transient.empty());
  CHECK(sol.seeds.permanent.empty());
  CHECK(sol.value == 0.0);
}

TEST_CASE("hub network: one permanent slot buys the hub") {
  const int m = 4;
  const InfoNetwork net = hub_net(m);
  const Budget budget{1.0, 1.0, 1.0};
  for (const bool lazy : {false, true}) {
    const Solution sol = greedy_max(net, budget, 3, exact_eval(), lazy);
    CHECK(sol.seeds.permanent == NodeSet{net.resolve("h")});
    CHECK(sol.seeds.transient.empty());
    // All m leaves plus the permanent hub are active from t=1 on.
    CHECK(sol.value == doctest::Approx(m + 1).epsilon(1e-12));
    CHECK(sol.k_hat == 1);
  }
}

TEST_CASE("budget safety and determinism") {
  Xoshiro256pp rng(13);
  for (int rep = 0; rep < 6; ++rep) {
    RandomNetOptions opt;
    opt.nodes = 6;
    opt.max_edges = 12;
    const InfoNetwork net = random_dag(rng, opt);
    const Budget budget{2.5, 1.0, 1.5};
    const Solution a = greedy_max(net, budget, 3, exact_eval());
    const Solution b = greedy_max(net, budget, 3, exact_eval());
    CHECK(budget.admits(a.seeds.transient.size(), a.seeds.permanent.size()));
    CHECK(a.seeds.transient == b.seeds.transient);
    CHECK(a.seeds.permanent == b.seeds.permanent);
    CHECK(a.value == b.value);
    CHECK(a.evaluations == b.evaluations);
  }
}

TEST_CASE("lazy greedy returns the eager solution under the exact evaluator") {
  Xoshiro256pp rng(17);
  for (int rep = 0; rep < 12; ++rep) {
    RandomNetOptions opt;
    opt.nodes = 2 + static_cast<int>(rng.next_below(6));
    opt.max_edges = 14;
    const InfoNetwork net = random_dag(rng, opt);
    const Budget budget{1.0 + static_cast<double>(rng.next_below(3)), 1.0, 1.0};
    const int horizon = 1 + static_cast<int>(rng.next_below(3));
    const Solution eager = greedy_max(net, budget, horizon, exact_eval(), false);
    const Solution lazy = greedy_max(net, budget, horizon, exact_eval(), true);
    CHECK(eager.seeds.transient == lazy.seeds.transient);
    CHECK(eager.seeds.permanent == lazy.seeds.permanent);
    CHECK(eager.value == lazy.value);
  }
}

TEST_CASE("monte-carlo greedy is deterministic for a fixed seed") {
  Xoshiro256pp rng(19);
  RandomNetOptions opt;
  opt.nodes = 6;
  opt.max_edges = 12;
  const InfoNetwork net = random_cyclic_network(rng, opt);
  Evaluator ev;
  ev.kind = EvaluatorKind::monte_carlo;
  ev.samples = 2000;
  ev.seed = 7;
  const Budget budget{2.0, 1.0, 1.0};
  const Solution a = greedy_max(net, budget, 3, ev);
  ev.threads = 2;
  const Solution b = greedy_max(net, budget, 3, ev);
  CHECK(a.seeds.transient == b.seeds.transient);
  CHECK(a.seeds.permanent == b.seeds.permanent);
  CHECK(a.value == b.value);
}

TEST_CASE("brute force: singleton budget enumerates 2n+1 seedings") {
  const InfoNetwork net = hub_net(3);  // 4 non-void nodes
  const Budget budget{1.0, 1.0, 1.0};
  const Solution sol = brute_force_opt(net, budget, 2, exact_eval());
  // empty + 4 transient singletons + 4 permanent singletons
  CHECK(sol.evaluations == 9);
  CHECK(sol.seeds.permanent == NodeSet{net.resolve("h")});
}

TEST_CASE("brute force on the triangle reduction reaches n+1") {
  UndirectedGraph g;
  g.labels = {"a", "b", "c"};
  g.edges = {{"a", "b"}, {"b", "c"}, {"a", "c"}};
  const ReductionInstance r = vertex_cover_reduction(g);

  // Mixed budget: the optimum is still n+1 and re-evaluates to it.
  const Solution mixed =
      brute_force_opt(r.net, Budget{3.0, 1.0, 1.0}, 1, exact_eval());
  CHECK(std::abs(mixed.value - 4.0) < 1e-12);
  CHECK(std::abs(expected_influence_dag(r.net, mixed.seeds, 1) - mixed.value) <
        1e-12);

  // Permanent-only budget (transient seats unaffordable): the optimum is the
  // lexicographically smallest cover plus the dummy.
  const Solution perm_only =
      brute_force_opt(r.net, Budget{3.0, 4.0, 1.0}, 1, exact_eval());
  CHECK(std::abs(perm_only.value - 4.0) < 1e-12);
  NodeSet expect{r.dummy, r.net.resolve("a"), r.net.resolve("b")};
  CHECK(perm_only.seeds.permanent == expect);
  CHECK(perm_only.seeds.transient.empty());
}

TEST_CASE("brute force respects its search budget") {
  const InfoNetwork net = hub_net(6);
  const Budget budget{6.0, 1.0, 1.0};
  CHECK_THROWS_AS(brute_force_opt(net, budget, 2, exact_eval(), 10), Error);
}

TEST_CASE("greedy achieves at least half of the brute-force optimum") {
  Xoshiro256pp rng(23);
  double min_ratio = 1.0;
  for (int rep = 0; rep < 20; ++rep) {
    RandomNetOptions opt;
    opt.nodes = 2 + static_cast<int>(rng.next_below(5));
    opt.max_edges = 12;
    const InfoNetwork net = random_dag(rng, opt);
    const Budget budget{1.0 + static_cast<double>(rng.next_below(3)),
                        1.0, rng.next_open01() < 0.5 ? 1.0 : 2.0};
    const int horizon = 1 + static_cast<int>(rng.next_below(3));
    const Solution greedy = greedy_max(net, budget, horizon, exact_eval(), true);
    const Solution best = brute_force_opt(net, budget, horizon, exact_eval());
    const double ratio = best.value > 0.0 ? greedy.value / best.value : 1.0;
    min_ratio = std::min(min_ratio, ratio);
    CHECK(ratio >= 0.5 - 1e-12);
  }
  MESSAGE("min greedy/optimal ratio: ", min_ratio);
}
