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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nlt/network.hpp"

namespace nlt::kernels {

inline constexpr std::size_t kLaneStride = 4;  // doubles per AVX2 vector

// Precompiled stepping plan for one (network, permanent set) pair. Lane-major
// state layout: buffers hold node_count x lanes doubles (0.0/1.0), lane index
// fastest. Edges targeting the void node are dropped (the void node is never
// active, so they contribute nothing to activation sums).
struct StepPlan {
  std::size_t nodes = 0;
  std::size_t lanes = 0;  // padded to a multiple of kLaneStride
  std::vector<std::uint32_t> row;  // CSR offsets, nodes+1
  std::vector<std::uint32_t> col;
  std::vector<double> weight;
  std::vector<std::uint8_t> forced;     // permanent seeds: always 1.0
  std::vector<std::uint8_t> silenced;   // void node: always 0.0
  std::vector<std::uint8_t> countable;  // contributes to influence counts
  std::vector<double> initial;          // per-node A0 indicator (A u Ahat)
};

StepPlan make_plan(const InfoNetwork& net, const NodeSet& transient,
                   const NodeSet& permanent, std::size_t lanes);

// One synchronous update: for every lane s and node v not forced/silenced,
//   f = sum over CSR row of weight * prev[col*lanes + s]
//   next[v*lanes + s] = (f >= theta[v*lanes + s]) ? 1.0 : 0.0
// Ties activate. Variants must agree bit for bit: per lane they perform the
// same multiplies and adds in the same order (builds pin -ffp-contract=off).
using StepFn = void (*)(const StepPlan&, const double* prev,
                        const double* theta, double* next);

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa) noexcept;
bool isa_available(Isa isa) noexcept;

// Best available variant; NLT_SIMD=scalar|avx2 overrides auto-detection.
Isa preferred_isa() noexcept;
StepFn step_fn(Isa isa);

void step_scalar(const StepPlan& plan, const double* prev, const double* theta,
                 double* next);
#if NLT_HAVE_AVX2_TU
void step_avx2(const StepPlan& plan, const double* prev, const double* theta,
               double* next);
#endif

// Runs `horizon` steps from the plan's initial state for `active_lanes` lanes
// of thresholds.
//   sigma_sum[s]  += countable active nodes summed over t = 1..horizon
//                    (exact small integers; time-0 row excluded)
//   indicator_acc, when non-null ((horizon+1) x nodes, +=):
//     indicator_acc[t*nodes + v] += sum_s lane_weight[s] * active_t[v, s]
// The lane reduction runs in ascending-lane scalar order regardless of the
// stepping ISA, so accumulated tables are ISA-independent too.
void run_batch(const StepPlan& plan, StepFn step, const double* theta,
               int horizon, std::size_t active_lanes, double* sigma_sum,
               const double* lane_weight = nullptr,
               double* indicator_acc = nullptr);

}  // namespace nlt::kernels
