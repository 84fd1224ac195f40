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

#include "nlt/kernels/step.hpp"

#include <cstdlib>
#include <cstring>

namespace nlt::kernels {

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "?";
}

bool isa_available(Isa isa) noexcept {
  if (isa == Isa::scalar) return true;
#if NLT_HAVE_AVX2_TU && defined(__x86_64__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Isa preferred_isa() noexcept {
  static const Isa choice = [] {
    const char* env = std::getenv("NLT_SIMD");
    if (env != nullptr) {
      if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
      if (std::strcmp(env, "avx2") == 0 && isa_available(Isa::avx2)) {
        return Isa::avx2;
      }
    }
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
  }();
  return choice;
}

StepFn step_fn(Isa isa) {
#if NLT_HAVE_AVX2_TU
  if (isa == Isa::avx2) {
    if (!isa_available(Isa::avx2)) {
      throw Error(Errc::bad_input, "avx2 kernel requested but not supported");
    }
    return &step_avx2;
  }
#else
  if (isa == Isa::avx2) {
    throw Error(Errc::bad_input, "avx2 kernel not compiled in");
  }
#endif
  return &step_scalar;
}

StepPlan make_plan(const InfoNetwork& net, const NodeSet& transient,
                   const NodeSet& permanent, std::size_t lanes) {
  StepPlan plan;
  plan.nodes = net.node_count();
  plan.lanes = (lanes + kLaneStride - 1) / kLaneStride * kLaneStride;
  plan.row.assign(plan.nodes + 1, 0);
  plan.forced.assign(plan.nodes, 0);
  plan.silenced.assign(plan.nodes, 0);
  plan.countable.assign(plan.nodes, 0);
  plan.initial.assign(plan.nodes, 0.0);

  for (NodeId v = 0; v < plan.nodes; ++v) {
    plan.silenced[v] = net.is_void(v) ? 1 : 0;
    plan.forced[v] = permanent.contains(v) ? 1 : 0;
    plan.countable[v] = net.counts_for_influence(v) ? 1 : 0;
    if (transient.contains(v) || permanent.contains(v)) plan.initial[v] = 1.0;
    std::uint32_t deg = 0;
    if (!net.is_void(v) && !plan.forced[v]) {
      for (const OutEdge& e : net.out(v)) {
        if (e.dst == net.void_node()) continue;
        ++deg;
      }
    }
    plan.row[v + 1] = plan.row[v] + deg;
  }
  plan.col.reserve(plan.row.back());
  plan.weight.reserve(plan.row.back());
  for (NodeId v = 0; v < plan.nodes; ++v) {
    if (net.is_void(v) || plan.forced[v]) continue;
    for (const OutEdge& e : net.out(v)) {
      if (e.dst == net.void_node()) continue;
      plan.col.push_back(e.dst);
      plan.weight.push_back(e.weight);
    }
  }
  return plan;
}

void run_batch(const StepPlan& plan, StepFn step, const double* theta,
               int horizon, std::size_t active_lanes, double* sigma_sum,
               const double* lane_weight, double* indicator_acc) {
  const std::size_t lanes = plan.lanes;
  std::vector<double> cur(plan.nodes * lanes);
  std::vector<double> nxt(plan.nodes * lanes);
  for (std::size_t v = 0; v < plan.nodes; ++v) {
    const double a0 = plan.initial[v];
    for (std::size_t s = 0; s < lanes; ++s) cur[v * lanes + s] = a0;
  }

  auto accumulate = [&](int t, const std::vector<double>& state) {
    if (t >= 1) {
      for (std::size_t v = 0; v < plan.nodes; ++v) {
        if (!plan.countable[v]) continue;
        const double* a = state.data() + v * lanes;
        for (std::size_t s = 0; s < active_lanes; ++s) sigma_sum[s] += a[s];
      }
    }
    if (indicator_acc != nullptr) {
      double* acc = indicator_acc + static_cast<std::size_t>(t) * plan.nodes;
      for (std::size_t v = 0; v < plan.nodes; ++v) {
        const double* a = state.data() + v * lanes;
        double total = acc[v];
        for (std::size_t s = 0; s < active_lanes; ++s) {
          total += lane_weight[s] * a[s];
        }
        acc[v] = total;
      }
    }
  };

  accumulate(0, cur);
  for (int t = 1; t <= horizon; ++t) {
    step(plan, cur.data(), theta, nxt.data());
    cur.swap(nxt);
    accumulate(t, cur);
  }
}

}  // namespace nlt::kernels
