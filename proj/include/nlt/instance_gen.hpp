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

#include "nlt/diffusion.hpp"
#include "nlt/network.hpp"
#include "nlt/rng.hpp"

namespace nlt {

struct RandomNetOptions {
  int nodes = 6;
  int max_edges = 12;
  // Weights from the grid {0.1,...,0.9} instead of continuous draws; grid
  // networks serialize and rebuild exactly.
  bool grid_weights = false;
  // Probability that a node's outgoing weights are scaled to sum to exactly 1
  // (continuous mode only; needs out-degree >= 2).
  double saturate_prob = 0.3;
};

// Acyclic: edges run from higher to lower node index.
InfoNetwork random_dag(Xoshiro256pp& rng, const RandomNetOptions& opt);

// Contains at least one directed cycle of length >= 2; no self-loops.
InfoNetwork random_cyclic_network(Xoshiro256pp& rng, const RandomNetOptions& opt);

// Acyclic except for exactly one self-loop on a non-void node.
InfoNetwork random_self_loop_network(Xoshiro256pp& rng,
                                     const RandomNetOptions& opt);

// Random disjoint seed sets over the non-void nodes.
SeedSets random_seed_sets(Xoshiro256pp& rng, const InfoNetwork& net,
                          bool allow_permanent, double transient_prob = 0.3,
                          double permanent_prob = 0.2);

}  // namespace nlt
