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

#include "nlt/network.hpp"

namespace nlt {

// Transient seeds are stored minus the permanent ones, so the pair is always
// disjoint. Neither set may contain the void node.
struct SeedSets {
  NodeSet transient;
  NodeSet permanent;

  SeedSets() = default;
  SeedSets(const InfoNetwork& net, NodeSet transient_in, NodeSet permanent_in);

  NodeSet all() const { return set_union(transient, permanent); }
};

// One threshold per node, strictly inside (0,1); the void slot holds an inert
// sentinel above 1 and is never consulted.
struct ThresholdConfig {
  std::vector<double> theta;
};

// Thresholds drawn i.i.d. Uniform(0,1) from xoshiro256++ (seeded through
// splitmix64), in node-index order. theta = (k + 0.5) * 2^-53.
ThresholdConfig sample_thresholds(const InfoNetwork& net, std::uint64_t seed);

struct Trajectory {
  int horizon = 0;
  std::size_t nodes = 0;
  std::vector<std::uint8_t> active;  // (horizon+1) x nodes

  bool at(int t, NodeId v) const {
    return active[static_cast<std::size_t>(t) * nodes + v] != 0;
  }
  std::uint8_t& cell(int t, NodeId v) {
    return active[static_cast<std::size_t>(t) * nodes + v];
  }
};

// One synchronous update of the threshold process: nodes outside the
// permanent set activate iff the weight of their active out-neighbors reaches
// their threshold (ties activate); permanent seeds stay active; the void node
// never activates.
NodeSet step_nlt(const InfoNetwork& net, const NodeSet& permanent,
                 const NodeSet& prev_active, const ThresholdConfig& thresholds);

// Deterministic trajectory for one threshold configuration. Row 0 is the seed
// indicator.
Trajectory run_nlt(const InfoNetwork& net, const SeedSets& seeds,
                   const ThresholdConfig& thresholds, int horizon);

// Average count of active countable nodes over t = 1..T (row 0 excluded).
double influence(const InfoNetwork& net, const Trajectory& traj);

struct MonteCarloEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Mean influence over `samples` independent threshold configurations. Sample
// i uses sub-seed derive_seed(seed, i); samples are grouped in fixed blocks
// whose partial moments merge in block order, so results are identical at any
// thread count and match a serial run bit for bit.
MonteCarloEstimate monte_carlo_influence(const InfoNetwork& net,
                                         const SeedSets& seeds, int horizon,
                                         std::uint64_t samples,
                                         std::uint64_t seed,
                                         unsigned threads = 0);

// Parent choices and path origins of the path-effect process. The full path
// P_v^t is materialized on demand from the parent table.
struct InfluencePaths {
  int horizon = 0;
  std::size_t nodes = 0;
  std::vector<NodeId> parent;  // (horizon+1) x nodes; row 0 = self
  std::vector<NodeId> origin;  // (horizon+1) x nodes

  NodeId parent_at(int t, NodeId v) const {
    return parent[static_cast<std::size_t>(t) * nodes + v];
  }
  NodeId origin_at(int t, NodeId v) const {
    return origin[static_cast<std::size_t>(t) * nodes + v];
  }
  // P_v^t[0..t].
  std::vector<NodeId> path(NodeId v, int t) const;
};

struct PathEffectRun {
  Trajectory trajectory;
  InfluencePaths paths;
};

// Path-effect process: every node picks, per step, an active parent with
// probability b/f when its activation sum f reaches its threshold, otherwise
// an inactive parent with probability b/(1-f). A node is active iff its path
// origin lies in the transient seed; the resulting trajectory coincides with
// run_nlt for the same thresholds regardless of the parent-choice randomness.
// Permanent seeds are handled upstream via transform_permanent.
PathEffectRun run_path_effect(const InfoNetwork& net, const NodeSet& transient,
                              const ThresholdConfig& thresholds, int horizon,
                              std::uint64_t seed);

}  // namespace nlt
