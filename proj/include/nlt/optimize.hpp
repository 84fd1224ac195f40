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
#include <string_view>

#include "nlt/diffusion.hpp"
#include "nlt/exact.hpp"
#include "nlt/network.hpp"

namespace nlt {

enum class EvaluatorKind { exact_dag, cells, monte_carlo };

const char* evaluator_name(EvaluatorKind kind) noexcept;
EvaluatorKind evaluator_from_name(std::string_view name);

struct EvalResult {
  double value = 0.0;
  double stderr_of_mean = 0.0;  // zero for the exact evaluators
};

// Influence oracle with pinned parameters, so repeated calls (and re-checks
// of reported solutions) are deterministic.
struct Evaluator {
  EvaluatorKind kind = EvaluatorKind::exact_dag;
  std::uint64_t samples = 10'000;       // monte_carlo
  std::uint64_t seed = 1;               // monte_carlo
  std::uint64_t cell_budget = kDefaultCellBudget;  // cells
  unsigned threads = 0;

  EvalResult evaluate(const InfoNetwork& net, const SeedSets& seeds,
                      int horizon) const;
};

struct Budget {
  double total = 0.0;           // K
  double cost_transient = 1.0;  // c
  double cost_permanent = 1.0;  // c-hat

  bool admits(std::size_t transient_count, std::size_t permanent_count) const {
    return cost_transient * static_cast<double>(transient_count) +
               cost_permanent * static_cast<double>(permanent_count) <=
           total;
  }
};

struct Solution {
  SeedSets seeds;
  double value = 0.0;
  EvaluatorKind evaluator = EvaluatorKind::exact_dag;
  std::uint64_t evaluations = 0;
  int k = 0;      // transient slots of the winning split
  int k_hat = 0;  // permanent slots of the winning split
};

enum class SeedRole { transient, permanent };

// sigma(seeds + candidate) - sigma(seeds). For the exact-dag evaluator the
// transient-role gain is computed from the walk decomposition
// Pr[R({w}) \ S(Ahat)], which never needs the base seed set.
double marginal_gain(const InfoNetwork& net, const SeedSets& seeds, NodeId node,
                     SeedRole role, int horizon, const Evaluator& evaluator);

// Enumerates every affordable (k, k-hat) split of the budget, runs the greedy
// over the partition matroid {|A| <= k, |Ahat| <= k-hat, A and Ahat disjoint}
// for each, and returns the best solution found. With `lazy`, stale gains are
// kept as upper bounds and re-evaluated only at the queue head; under an
// exact evaluator on acyclic networks the result is identical to the eager
// scan. Ties break permanent-role first, then by label.
Solution greedy_max(const InfoNetwork& net, const Budget& budget, int horizon,
                    const Evaluator& evaluator, bool lazy = false,
                    unsigned threads = 0);

// Exhaustive maximum over all disjoint in-budget seed pairs; ties go to the
// lexicographically smallest (permanent labels, transient labels).
Solution brute_force_opt(const InfoNetwork& net, const Budget& budget,
                         int horizon, const Evaluator& evaluator,
                         std::uint64_t max_pairs = 1'000'000);

}  // namespace nlt
