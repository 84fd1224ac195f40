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

// AVX2 variant of the batched threshold step. Deliberately mul+add rather
// than FMA: per lane the operation sequence must match step_scalar so both
// kernels produce identical bits.

#include "nlt/kernels/step.hpp"

#include <immintrin.h>

namespace nlt::kernels {

void step_avx2(const StepPlan& plan, const double* prev, const double* theta,
               double* next) {
  const std::size_t lanes = plan.lanes;
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t v = 0; v < plan.nodes; ++v) {
    double* out = next + v * lanes;
    if (plan.silenced[v]) {
      for (std::size_t s = 0; s < lanes; s += 4) _mm256_storeu_pd(out + s, zero);
      continue;
    }
    if (plan.forced[v]) {
      for (std::size_t s = 0; s < lanes; s += 4) _mm256_storeu_pd(out + s, one);
      continue;
    }
    const double* th = theta + v * lanes;
    for (std::size_t s = 0; s < lanes; s += 4) _mm256_storeu_pd(out + s, zero);
    for (std::uint32_t e = plan.row[v]; e < plan.row[v + 1]; ++e) {
      const __m256d w = _mm256_set1_pd(plan.weight[e]);
      const double* src = prev + static_cast<std::size_t>(plan.col[e]) * lanes;
      for (std::size_t s = 0; s < lanes; s += 4) {
        const __m256d f = _mm256_loadu_pd(out + s);
        const __m256d a = _mm256_loadu_pd(src + s);
        _mm256_storeu_pd(out + s, _mm256_add_pd(f, _mm256_mul_pd(w, a)));
      }
    }
    for (std::size_t s = 0; s < lanes; s += 4) {
      const __m256d f = _mm256_loadu_pd(out + s);
      const __m256d t = _mm256_loadu_pd(th + s);
      const __m256d ge = _mm256_cmp_pd(f, t, _CMP_GE_OQ);
      _mm256_storeu_pd(out + s, _mm256_and_pd(ge, one));
    }
  }
}

}  // namespace nlt::kernels
