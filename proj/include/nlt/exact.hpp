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

#pragma once

#include <cstdint>
#include <vector>

#include "nlt/diffusion.hpp"
#include "nlt/network.hpp"

namespace nlt {

inline constexpr std::uint64_t kDefaultCellBudget = 10'000'000;

// Probabilities indexed by (time step, node).
struct ProbTable {
  int horizon = 0;
  std::size_t nodes = 0;
  std::vector<double> p;

  double at(int t, NodeId v) const {
    return p[static_cast<std::size_t>(t) * nodes + v];
  }
  double& cell(int t, NodeId v) {
    return p[static_cast<std::size_t>(t) * nodes + v];
  }
};

// Random-walk reaching probabilities: r[t][v] = Pr[walk from v occupies a
// node of C at exactly time t]. Backward DP conditioning on the first step;
// the void self-loop keeps the walk there once absorbed.
ProbTable reach_table(const InfoNetwork& net, const NodeSet& targets, int horizon);
double reach_prob(const InfoNetwork& net, NodeId source, const NodeSet& targets,
                  int t);

// Passing-through probabilities: s[t][v] = Pr[walk from v hits C at time t or
// before], computed on the chain with C made absorbing.
ProbTable pass_table(const InfoNetwork& net, const NodeSet& targets, int horizon);
double pass_prob(const InfoNetwork& net, NodeId source, const NodeSet& targets,
                 int t);

// Pr[walk from v occupies C at exactly time t without touching `avoid` at any
// time in 0..t]. Realizes the marginal-gain decomposition terms.
ProbTable reach_table_avoiding(const InfoNetwork& net, const NodeSet& targets,
                               const NodeSet& avoid, int horizon);

// Occupancy distribution of the walk started at `source` after `t` steps.
std::vector<double> forward_occupancy(const InfoNetwork& net, NodeId source,
                                      int t);

// Exact per-(t,node) activation probabilities on acyclic networks:
//   q[0][v] = [v in A u Ahat],  q[t][y in Ahat] = 1,  q[t][void] = 0,
//   q[t][v] = sum over out-edges of weight * q[t-1][dst] otherwise.
// Refuses cyclic input (the walk identity fails there) with a witness cycle.
ProbTable expected_indicator_dag(const InfoNetwork& net, const SeedSets& seeds,
                                 int horizon);

// (1/T) * sum over t=1..T and countable nodes of q[t][v].
double expected_influence_dag(const InfoNetwork& net, const SeedSets& seeds,
                              int horizon);

// Per-node attainable activation levels and the interval decomposition of
// (0,1) they induce. A trajectory is constant on every product cell.
struct CellPartition {
  std::vector<std::vector<double>> levels;  // per node, sorted, starts at 0
  std::vector<std::vector<double>> cuts;    // levels strictly inside (0,1)
  std::uint64_t cell_count = 1;             // saturating product of intervals
};

CellPartition cell_partition(const InfoNetwork& net,
                             std::size_t max_levels_per_node = 1u << 20);

// Sampling-free oracle valid on any network, cyclic ones included: enumerate
// threshold cells, run the deterministic trajectory once per cell, and weight
// by cell volume. Exact because activation compares f against attainable
// levels only.
ProbTable exact_indicator_cells(const InfoNetwork& net, const SeedSets& seeds,
                                int horizon,
                                std::uint64_t budget = kDefaultCellBudget,
                                unsigned threads = 0);
double exact_influence_cells(const InfoNetwork& net, const SeedSets& seeds,
                             int horizon,
                             std::uint64_t budget = kDefaultCellBudget,
                             unsigned threads = 0);

}  // namespace nlt
