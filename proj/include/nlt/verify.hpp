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

#include <optional>
#include <string>
#include <vector>

#include "nlt/optimize.hpp"

namespace nlt {

enum class SubmodScope { first_arg, second_arg, both };

struct SubmodViolation {
  bool second_arg = false;    // which argument carried the added seed
  bool monotonicity = false;  // value decreased instead of a gain inversion
  NodeSet small_transient, large_transient;
  NodeSet small_permanent, large_permanent;
  NodeId added = 0;
  double gap_small = 0.0;  // marginal gain at the smaller pair
  double gap_large = 0.0;  // marginal gain at the larger pair
};

struct SubmodularityReport {
  std::string instance;
  std::uint64_t checked = 0;
  double tolerance = 0.0;            // gap tolerance for exact evaluators
  std::string tolerance_policy;      // "1e-9" or "4*stderr"
  double max_violation = 0.0;
  std::vector<SubmodViolation> violations;  // capped; `violation_count` is full
  std::uint64_t violation_count = 0;

  bool ok() const { return violation_count == 0; }
};

// Checks the diminishing-gain inequalities in the transient argument, the
// permanent argument, or both simultaneously (small pair contained in the
// large pair argument-wise), plus monotonicity in each argument. Exhaustive
// over every tuple when the non-void node count is at most `exhaustive_limit`
// and the evaluator is exact; otherwise `sampled_tuples` random tuples are
// drawn with `seed`. Exact checks use a 1e-9 gap tolerance; Monte-Carlo
// checks use 4x the combined standard error.
SubmodularityReport check_submodularity(const InfoNetwork& net, int horizon,
                                        const Evaluator& evaluator,
                                        SubmodScope scope,
                                        std::uint64_t sampled_tuples = 2000,
                                        std::uint64_t seed = 1,
                                        int exhaustive_limit = 8);

enum class Family { general_cycles, self_loop_only, acyclic_control };

const char* family_name(Family family) noexcept;
Family family_from_name(std::string_view name);

// A re-checkable witness that A -> (1/T) sum_t E[X_vstar^t(A)] is not
// submodular, together with the leaf amplification that lifts it to a
// violation of the full expected-influence objective at horizon T+1.
struct Counterexample {
  std::vector<std::string> labels;  // serialized network (grid weights)
  std::vector<LabeledEdge> edges;
  int horizon = 0;  // T of the violated functional
  std::string vstar;
  std::vector<std::string> small_set, large_set;  // A subset of B
  std::string added;                              // w, outside B
  std::vector<double> gap_small_per_t;            // E[X^t] gains, t = 1..T
  std::vector<double> gap_large_per_t;
  double violation = 0.0;  // phi gain at B minus phi gain at A (> tolerance)
  int amplifier = 0;       // leaves attached to vstar
  double amplified_violation = 0.0;  // same quantity for sigma at horizon T+1
  std::string oracle = "cells";
};

struct SearchStats {
  std::uint64_t instances = 0;
  std::uint64_t triples = 0;
};

// Seeded randomized search over small networks of the family (weights on the
// 0.1..0.9 grid). Returns the first witness, already amplified and
// re-checked; nullopt means the search space was exhausted without a find,
// which is reported rather than treated as a disproof.
std::optional<Counterexample> search_counterexample(
    Family family, int max_n, int t_min, int t_max, std::uint64_t seed,
    std::uint64_t max_instances = 20'000, SearchStats* stats = nullptr,
    unsigned threads = 0);

// Rebuilds the serialized network and re-checks both the per-node violation
// and the amplified objective violation.
bool reverify_counterexample(const Counterexample& cex, double tolerance = 1e-9);

struct CheckEntry {
  std::string name;
  bool pass = true;
  bool applicable = true;  // false: skipped (e.g. needs an acyclic network)
  double max_dev = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct EquivalenceReport {
  std::vector<CheckEntry> entries;
  bool ok() const {
    for (const CheckEntry& e : entries) {
      if (e.applicable && !e.pass) return false;
    }
    return true;
  }
};

// Cross-checks the model equivalences on one instance:
//   nlt-pe-trajectories   exact equality per sampled threshold config
//   indicator-vs-walk     Monte-Carlo E[X_v^t] vs the exact walk DP (acyclic)
//   source-event-vs-walk  Monte-Carlo Pr[path origin in C] vs reach
//                         probabilities, plus invariance across seed sets
//   transform-equivalence exact trajectory equality through dummy chains
// Statistical entries that miss are retried once with 4x the samples.
EquivalenceReport check_equivalences(const InfoNetwork& net,
                                     const SeedSets& seeds, int horizon,
                                     std::uint64_t samples, std::uint64_t seed);

struct HardnessWitness {
  bool cover_exists = false;
  bool seed_set_exists = false;
  std::vector<std::string> cover;
  std::vector<std::string> seed_set;
  double sigma = 0.0;
};

// Brute-forces both sides of the reduction equivalence: a vertex cover of
// size k exists iff some permanent set of size k+1 reaches expected influence
// n+1 at horizon 1 on the reduction network.
bool verify_hardness_reduction(const UndirectedGraph& graph, int k,
                               HardnessWitness* witness = nullptr);

}  // namespace nlt
