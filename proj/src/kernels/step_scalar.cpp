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

// Reference kernel. The AVX2 variant mirrors this loop structure exactly;
// equivalence tests assert bitwise-identical output.

#include "nlt/kernels/step.hpp"

namespace nlt::kernels {

void step_scalar(const StepPlan& plan, const double* prev, const double* theta,
                 double* next) {
  const std::size_t lanes = plan.lanes;
  for (std::size_t v = 0; v < plan.nodes; ++v) {
    double* out = next + v * lanes;
    if (plan.silenced[v]) {
      for (std::size_t s = 0; s < lanes; ++s) out[s] = 0.0;
      continue;
    }
    if (plan.forced[v]) {
      for (std::size_t s = 0; s < lanes; ++s) out[s] = 1.0;
      continue;
    }
    const double* th = theta + v * lanes;
    for (std::size_t s = 0; s < lanes; ++s) out[s] = 0.0;
    // out temporarily holds the activation sum f.
    for (std::uint32_t e = plan.row[v]; e < plan.row[v + 1]; ++e) {
      const double w = plan.weight[e];
      const double* src = prev + static_cast<std::size_t>(plan.col[e]) * lanes;
      for (std::size_t s = 0; s < lanes; ++s) out[s] = out[s] + w * src[s];
    }
    for (std::size_t s = 0; s < lanes; ++s) out[s] = out[s] >= th[s] ? 1.0 : 0.0;
  }
}

}  // namespace nlt::kernels
