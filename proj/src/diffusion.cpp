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

#include "nlt/diffusion.hpp"

#include <cmath>

#include "nlt/kernels/step.hpp"
#include "nlt/parallel.hpp"
#include "nlt/rng.hpp"

namespace nlt {

namespace {

constexpr std::size_t kMcBlock = 64;  // samples per reduction block

void require_thresholds(const InfoNetwork& net, const ThresholdConfig& cfg) {
  if (cfg.theta.size() != net.node_count()) {
    throw Error(Errc::missing_threshold,
                "threshold configuration does not cover every node");
  }
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!net.is_void(v) && std::isnan(cfg.theta[v])) {
      throw Error(Errc::missing_threshold,
                  "missing threshold for node " + net.label(v));
    }
  }
}

}  // namespace

SeedSets::SeedSets(const InfoNetwork& net, NodeSet transient_in,
                   NodeSet permanent_in) {
  for (NodeId v : transient_in) {
    if (v >= net.node_count() || net.is_void(v)) {
      throw Error(Errc::invalid_seed, "transient seed must be a non-void node");
    }
  }
  for (NodeId v : permanent_in) {
    if (v >= net.node_count() || net.is_void(v)) {
      throw Error(Errc::invalid_seed, "permanent seed must be a non-void node");
    }
  }
  permanent = std::move(permanent_in);
  transient = set_difference(transient_in, permanent);
}

ThresholdConfig sample_thresholds(const InfoNetwork& net, std::uint64_t seed) {
  ThresholdConfig cfg;
  cfg.theta.assign(net.node_count(), 2.0);
  Xoshiro256pp rng(seed);
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!net.is_void(v)) cfg.theta[v] = rng.next_open01();
  }
  return cfg;
}

NodeSet step_nlt(const InfoNetwork& net, const NodeSet& permanent,
                 const NodeSet& prev_active, const ThresholdConfig& thresholds) {
  require_thresholds(net, thresholds);
  std::vector<std::uint8_t> prev(net.node_count(), 0);
  for (NodeId v : prev_active) prev[v] = 1;

  NodeSet next = permanent;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (net.is_void(v) || permanent.contains(v)) continue;
    // Summation order matches the batched kernels (CSR order, inactive
    // neighbors contributing exact zeros), so trajectories agree bit for bit.
    double f = 0.0;
    for (const OutEdge& e : net.out(v)) {
      if (e.dst != net.void_node() && prev[e.dst]) f += e.weight;
    }
    if (f >= thresholds.theta[v]) next.insert(v);
  }
  return next;
}

Trajectory run_nlt(const InfoNetwork& net, const SeedSets& seeds,
                   const ThresholdConfig& thresholds, int horizon) {
  if (horizon < 1) throw Error(Errc::bad_input, "horizon must be >= 1");
  require_thresholds(net, thresholds);

  Trajectory traj;
  traj.horizon = horizon;
  traj.nodes = net.node_count();
  traj.active.assign(static_cast<std::size_t>(horizon + 1) * traj.nodes, 0);

  NodeSet cur = seeds.all();
  for (NodeId v : cur) traj.cell(0, v) = 1;
  for (int t = 1; t <= horizon; ++t) {
    cur = step_nlt(net, seeds.permanent, cur, thresholds);
    for (NodeId v : cur) traj.cell(t, v) = 1;
  }
  return traj;
}

double influence(const InfoNetwork& net, const Trajectory& traj) {
  double total = 0.0;
  for (int t = 1; t <= traj.horizon; ++t) {
    for (NodeId v = 0; v < traj.nodes; ++v) {
      if (net.counts_for_influence(v) && traj.at(t, v)) total += 1.0;
    }
  }
  return total / traj.horizon;
}

MonteCarloEstimate monte_carlo_influence(const InfoNetwork& net,
                                         const SeedSets& seeds, int horizon,
                                         std::uint64_t samples,
                                         std::uint64_t seed, unsigned threads) {
  if (horizon < 1) throw Error(Errc::bad_input, "horizon must be >= 1");
  if (samples < 1) throw Error(Errc::bad_input, "samples must be >= 1");

  const kernels::StepPlan plan =
      kernels::make_plan(net, seeds.transient, seeds.permanent, kMcBlock);
  const kernels::StepFn step = kernels::step_fn(kernels::preferred_isa());

  const std::size_t blocks = (samples + kMcBlock - 1) / kMcBlock;
  struct BlockMoments {
    double count = 0.0;
    double mean = 0.0;  // of integer active-count sums
    double ss = 0.0;    // sum of squared deviations
  };
  std::vector<BlockMoments> partial(blocks);

  for_each_block(blocks, threads, [&](std::size_t b) {
    const std::uint64_t first = b * kMcBlock;
    const std::size_t active_lanes =
        static_cast<std::size_t>(std::min<std::uint64_t>(kMcBlock, samples - first));
    std::vector<double> theta(plan.nodes * plan.lanes, 2.0);
    for (std::size_t s = 0; s < active_lanes; ++s) {
      Xoshiro256pp rng(derive_seed(seed, first + s));
      for (NodeId v = 0; v < net.node_count(); ++v) {
        if (!net.is_void(v)) theta[v * plan.lanes + s] = rng.next_open01();
      }
    }
    std::vector<double> sigma(active_lanes, 0.0);
    kernels::run_batch(plan, step, theta.data(), horizon, active_lanes,
                       sigma.data());

    // Two-pass moments on the exact integer sums: a deterministic instance
    // (every sample identical) yields ss == 0 exactly.
    BlockMoments m;
    m.count = static_cast<double>(active_lanes);
    double sum = 0.0;
    for (double x : sigma) sum += x;
    m.mean = sum / m.count;
    for (double x : sigma) m.ss += (x - m.mean) * (x - m.mean);
    partial[b] = m;
  });

  BlockMoments total;
  for (const BlockMoments& m : partial) {
    if (total.count == 0.0) {
      total = m;
      continue;
    }
    const double n = total.count + m.count;
    const double delta = m.mean - total.mean;
    total.ss += m.ss + delta * delta * (total.count * m.count / n);
    total.mean += delta * (m.count / n);
    total.count = n;
  }

  MonteCarloEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.mean = total.mean / horizon;
  if (samples > 1) {
    const double var = total.ss / (total.count - 1.0);
    est.stderr_of_mean = std::sqrt(var / total.count) / horizon;
  }
  return est;
}

std::vector<NodeId> InfluencePaths::path(NodeId v, int t) const {
  std::vector<NodeId> p(static_cast<std::size_t>(t) + 1);
  NodeId cur = v;
  for (int i = t; i >= 1; --i) {
    cur = parent_at(i, cur);
    p[i] = cur;
  }
  p[0] = cur;
  if (t == 0) p[0] = v;
  return p;
}

PathEffectRun run_path_effect(const InfoNetwork& net, const NodeSet& transient,
                              const ThresholdConfig& thresholds, int horizon,
                              std::uint64_t seed) {
  if (horizon < 1) throw Error(Errc::bad_input, "horizon must be >= 1");
  require_thresholds(net, thresholds);
  for (NodeId v : transient) {
    if (net.is_void(v)) {
      throw Error(Errc::invalid_seed, "transient seed must be a non-void node");
    }
  }

  const std::size_t n = net.node_count();
  InfluencePaths paths;
  paths.horizon = horizon;
  paths.nodes = n;
  paths.parent.assign(static_cast<std::size_t>(horizon + 1) * n, 0);
  paths.origin.assign(static_cast<std::size_t>(horizon + 1) * n, 0);
  for (NodeId v = 0; v < n; ++v) {
    paths.parent[v] = v;
    paths.origin[v] = v;
  }

  std::vector<std::uint8_t> active(n, 0);
  for (NodeId v : transient) active[v] = 1;

  Xoshiro256pp rng(seed);
  std::vector<std::uint8_t> next_active(n, 0);
  for (int t = 1; t <= horizon; ++t) {
    const std::size_t base = static_cast<std::size_t>(t) * n;
    const std::size_t prev_base = base - n;
    for (NodeId v = 0; v < n; ++v) {
      if (net.is_void(v)) {
        paths.parent[base + v] = v;
        paths.origin[base + v] = v;
        next_active[v] = 0;
        continue;
      }
      double f = 0.0;
      for (const OutEdge& e : net.out(v)) {
        if (e.dst != net.void_node() && active[e.dst]) f += e.weight;
      }
      const double u = rng.next_open01();
      NodeId chosen = net.void_node();
      if (f >= thresholds.theta[v]) {
        // Active parent with probability b/f.
        const double x = u * f;
        double cum = 0.0;
        bool found = false;
        for (const OutEdge& e : net.out(v)) {
          if (e.dst == net.void_node() || !active[e.dst]) continue;
          chosen = e.dst;
          cum += e.weight;
          if (cum >= x) {
            found = true;
            break;
          }
        }
        (void)found;  // float drift falls through to the last active neighbor
      } else {
        // Inactive parent with probability b/(1-f); the void edge competes here.
        const double x = u * (1.0 - f);
        double cum = 0.0;
        for (const OutEdge& e : net.out(v)) {
          if (e.dst != net.void_node() && active[e.dst]) continue;
          chosen = e.dst;
          cum += e.weight;
          if (cum >= x) break;
        }
      }
      paths.parent[base + v] = chosen;
      paths.origin[base + v] = paths.origin[prev_base + chosen];
      next_active[v] = transient.contains(paths.origin[base + v]) ? 1 : 0;
    }
    active = next_active;
  }

  Trajectory traj;
  traj.horizon = horizon;
  traj.nodes = n;
  traj.active.assign(static_cast<std::size_t>(horizon + 1) * n, 0);
  for (int t = 0; t <= horizon; ++t) {
    for (NodeId v = 0; v < n; ++v) {
      traj.cell(t, v) =
          transient.contains(paths.origin_at(t, v)) && !net.is_void(v) ? 1 : 0;
    }
  }
  return {std::move(traj), std::move(paths)};
}

}  // namespace nlt
