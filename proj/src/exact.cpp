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

#include "nlt/exact.hpp"

#include <algorithm>
#include <cmath>

#include "nlt/accum.hpp"
#include "nlt/kernels/step.hpp"
#include "nlt/parallel.hpp"

namespace nlt {

namespace {

ProbTable make_table(const InfoNetwork& net, int horizon) {
  if (horizon < 0) throw Error(Errc::bad_input, "horizon must be >= 0");
  ProbTable table;
  table.horizon = horizon;
  table.nodes = net.node_count();
  table.p.assign(static_cast<std::size_t>(horizon + 1) * table.nodes, 0.0);
  return table;
}

void require_acyclic(const InfoNetwork& net) {
  if (!net.acyclic()) {
    topological_order(net);  // throws CyclicNetworkError with a witness
    throw Error(Errc::cyclic_network, "network has a directed cycle");
  }
}

}  // namespace

ProbTable reach_table(const InfoNetwork& net, const NodeSet& targets,
                      int horizon) {
  ProbTable r = make_table(net, horizon);
  for (NodeId v : targets) r.cell(0, v) = 1.0;
  for (int t = 1; t <= horizon; ++t) {
    for (NodeId v = 0; v < net.node_count(); ++v) {
      double acc = 0.0;
      for (const OutEdge& e : net.out(v)) acc += e.weight * r.at(t - 1, e.dst);
      r.cell(t, v) = acc;
    }
  }
  return r;
}

double reach_prob(const InfoNetwork& net, NodeId source, const NodeSet& targets,
                  int t) {
  return reach_table(net, targets, t).at(t, source);
}

ProbTable pass_table(const InfoNetwork& net, const NodeSet& targets,
                     int horizon) {
  ProbTable s = make_table(net, horizon);
  for (NodeId v : targets) s.cell(0, v) = 1.0;
  for (int t = 1; t <= horizon; ++t) {
    for (NodeId v = 0; v < net.node_count(); ++v) {
      if (targets.contains(v)) {
        s.cell(t, v) = 1.0;
        continue;
      }
      double acc = 0.0;
      for (const OutEdge& e : net.out(v)) acc += e.weight * s.at(t - 1, e.dst);
      s.cell(t, v) = acc;
    }
  }
  return s;
}

double pass_prob(const InfoNetwork& net, NodeId source, const NodeSet& targets,
                 int t) {
  return pass_table(net, targets, t).at(t, source);
}

ProbTable reach_table_avoiding(const InfoNetwork& net, const NodeSet& targets,
                               const NodeSet& avoid, int horizon) {
  ProbTable a = make_table(net, horizon);
  for (NodeId v : targets) {
    if (!avoid.contains(v)) a.cell(0, v) = 1.0;
  }
  for (int t = 1; t <= horizon; ++t) {
    for (NodeId v = 0; v < net.node_count(); ++v) {
      if (avoid.contains(v)) continue;  // stays 0
      double acc = 0.0;
      for (const OutEdge& e : net.out(v)) acc += e.weight * a.at(t - 1, e.dst);
      a.cell(t, v) = acc;
    }
  }
  return a;
}

std::vector<double> forward_occupancy(const InfoNetwork& net, NodeId source,
                                      int t) {
  std::vector<double> cur(net.node_count(), 0.0);
  cur[source] = 1.0;
  std::vector<double> next(net.node_count());
  for (int i = 0; i < t; ++i) {
    std::fill(next.begin(), next.end(), 0.0);
    for (NodeId v = 0; v < net.node_count(); ++v) {
      if (cur[v] == 0.0) continue;
      for (const OutEdge& e : net.out(v)) next[e.dst] += cur[v] * e.weight;
    }
    cur.swap(next);
  }
  return cur;
}

ProbTable expected_indicator_dag(const InfoNetwork& net, const SeedSets& seeds,
                                 int horizon) {
  require_acyclic(net);
  ProbTable q = make_table(net, horizon);
  for (NodeId v : seeds.all()) q.cell(0, v) = 1.0;
  for (int t = 1; t <= horizon; ++t) {
    for (NodeId v = 0; v < net.node_count(); ++v) {
      if (net.is_void(v)) continue;
      if (seeds.permanent.contains(v)) {
        q.cell(t, v) = 1.0;
        continue;
      }
      double acc = 0.0;
      for (const OutEdge& e : net.out(v)) acc += e.weight * q.at(t - 1, e.dst);
      q.cell(t, v) = acc;
    }
  }
  return q;
}

double expected_influence_dag(const InfoNetwork& net, const SeedSets& seeds,
                              int horizon) {
  if (horizon < 1) throw Error(Errc::bad_input, "horizon must be >= 1");
  const ProbTable q = expected_indicator_dag(net, seeds, horizon);
  double total = 0.0;
  for (int t = 1; t <= horizon; ++t) {
    for (NodeId v = 0; v < net.node_count(); ++v) {
      if (net.counts_for_influence(v)) total += q.at(t, v);
    }
  }
  return total / horizon;
}

CellPartition cell_partition(const InfoNetwork& net,
                             std::size_t max_levels_per_node) {
  CellPartition part;
  part.levels.resize(net.node_count());
  part.cuts.resize(net.node_count());
  for (NodeId v = 0; v < net.node_count(); ++v) {
    std::vector<double>& levels = part.levels[v];
    levels = {0.0};
    if (net.is_void(v)) continue;
    // Distinct attainable sums, extended one out-edge at a time in CSR order
    // so rounding matches the stepping kernels exactly.
    std::vector<double> merged;
    for (const OutEdge& e : net.out(v)) {
      if (e.dst == net.void_node()) continue;
      merged.clear();
      merged.reserve(levels.size() * 2);
      for (double x : levels) merged.push_back(x);
      for (double x : levels) merged.push_back(x + e.weight);
      std::sort(merged.begin(), merged.end());
      merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
      if (merged.size() > max_levels_per_node) {
        throw Error(Errc::cell_budget_exceeded,
                    "attainable-level set too large at node " + net.label(v));
      }
      levels = merged;
    }
    for (double x : levels) {
      if (x > 0.0 && x < 1.0) part.cuts[v].push_back(x);
    }
    const std::uint64_t intervals = part.cuts[v].size() + 1;
    if (part.cell_count > UINT64_MAX / intervals) {
      part.cell_count = UINT64_MAX;
    } else {
      part.cell_count *= intervals;
    }
  }
  return part;
}

namespace {

struct CellEnumerator {
  // Nodes with more than one interval, in ascending id order; the first one
  // varies fastest.
  std::vector<NodeId> vary;
  std::vector<std::uint64_t> radix;
  const CellPartition* part = nullptr;

  double boundary(NodeId v, std::size_t i) const {
    const auto& cuts = part->cuts[v];
    if (i == 0) return 0.0;
    if (i == cuts.size() + 1) return 1.0;
    return cuts[i - 1];
  }
  // Representative threshold: interval midpoint, falling back to the upper
  // boundary when the midpoint is not strictly interior (the >= tie rule
  // makes the upper boundary behave exactly like the open interval).
  double representative(NodeId v, std::size_t i) const {
    const double lo = boundary(v, i);
    const double hi = boundary(v, i + 1);
    const double mid = 0.5 * (lo + hi);
    return mid > lo ? mid : hi;
  }
  double length(NodeId v, std::size_t i) const {
    return boundary(v, i + 1) - boundary(v, i);
  }

  // Fills lane `s` of the theta buffer for the given cell and returns the
  // cell volume.
  double fill_lane(std::uint64_t cell, double* theta, std::size_t lanes,
                   std::size_t s, const std::vector<double>& base_theta) const {
    double volume = 1.0;
    for (std::size_t v = 0; v < base_theta.size(); ++v) {
      theta[v * lanes + s] = base_theta[v];
    }
    for (std::size_t d = 0; d < vary.size(); ++d) {
      const NodeId v = vary[d];
      const std::size_t i = static_cast<std::size_t>(cell % radix[d]);
      cell /= radix[d];
      theta[v * lanes + s] = representative(v, i);
      volume *= length(v, i);
    }
    return volume;
  }
};

CellEnumerator make_enumerator(const InfoNetwork& net, const CellPartition& part,
                               std::uint64_t budget) {
  if (part.cell_count > budget) {
    throw Error(Errc::cell_budget_exceeded,
                "cell count " + std::to_string(part.cell_count) +
                    " exceeds budget " + std::to_string(budget));
  }
  CellEnumerator en;
  en.part = &part;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!part.cuts[v].empty()) {
      en.vary.push_back(v);
      en.radix.push_back(part.cuts[v].size() + 1);
    }
  }
  return en;
}

// Shared cell sweep. Accumulates, per fixed-size shard, either the
// volume-weighted sigma total or the volume-weighted indicator table, then
// merges shards in index order.
void sweep_cells(const InfoNetwork& net, const SeedSets& seeds, int horizon,
                 std::uint64_t budget, unsigned threads, bool want_table,
                 ProbTable* table_out, double* sigma_out) {
  const CellPartition part = cell_partition(net);
  const CellEnumerator en = make_enumerator(net, part, budget);
  const std::uint64_t cells = part.cell_count;

  const kernels::StepPlan plan =
      kernels::make_plan(net, seeds.transient, seeds.permanent, kernels::kLaneStride * 16);
  const kernels::StepFn step = kernels::step_fn(kernels::preferred_isa());
  const std::size_t batch = plan.lanes;

  // Default representative for single-interval nodes (and the void sentinel).
  std::vector<double> base_theta(net.node_count(), 2.0);
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!net.is_void(v)) base_theta[v] = en.part->cuts[v].empty() ? 0.5 : 2.0;
  }

  constexpr std::uint64_t kBatchesPerShard = 16;
  const std::uint64_t batches = (cells + batch - 1) / batch;
  const std::uint64_t shards = (batches + kBatchesPerShard - 1) / kBatchesPerShard;

  std::vector<ProbTable> shard_tables;
  if (want_table) shard_tables.resize(shards);
  std::vector<double> shard_sigma(want_table ? 0 : shards, 0.0);

  for_each_block(shards, threads, [&](std::size_t shard) {
    ProbTable local = make_table(net, horizon);
    CompensatedSum sigma_total;
    std::vector<double> theta(plan.nodes * plan.lanes);
    std::vector<double> volume(batch);
    std::vector<double> sigma(batch);

    const std::uint64_t batch_lo = shard * kBatchesPerShard;
    const std::uint64_t batch_hi = std::min(batches, batch_lo + kBatchesPerShard);
    for (std::uint64_t b = batch_lo; b < batch_hi; ++b) {
      const std::uint64_t first = b * batch;
      const std::size_t active =
          static_cast<std::size_t>(std::min<std::uint64_t>(batch, cells - first));
      for (std::size_t s = 0; s < active; ++s) {
        volume[s] = en.fill_lane(first + s, theta.data(), plan.lanes, s, base_theta);
      }
      for (std::size_t s = active; s < batch; ++s) {
        volume[s] = 0.0;
        for (std::size_t v = 0; v < plan.nodes; ++v) theta[v * plan.lanes + s] = 2.0;
      }
      std::fill(sigma.begin(), sigma.begin() + active, 0.0);
      kernels::run_batch(plan, step, theta.data(), horizon, active, sigma.data(),
                         want_table ? volume.data() : nullptr,
                         want_table ? local.p.data() : nullptr);
      if (!want_table) {
        for (std::size_t s = 0; s < active; ++s) sigma_total.add(volume[s] * sigma[s]);
      }
    }
    if (want_table) {
      shard_tables[shard] = std::move(local);
    } else {
      shard_sigma[shard] = sigma_total.value();
    }
  });

  if (want_table) {
    *table_out = make_table(net, horizon);
    for (const ProbTable& local : shard_tables) {
      for (std::size_t i = 0; i < table_out->p.size(); ++i) {
        table_out->p[i] += local.p[i];
      }
    }
  } else {
    CompensatedSum total;
    for (double s : shard_sigma) total.add(s);
    *sigma_out = total.value() / horizon;
  }
}

}  // namespace

ProbTable exact_indicator_cells(const InfoNetwork& net, const SeedSets& seeds,
                                int horizon, std::uint64_t budget,
                                unsigned threads) {
  if (horizon < 0) throw Error(Errc::bad_input, "horizon must be >= 0");
  ProbTable table;
  sweep_cells(net, seeds, horizon, budget, threads, /*want_table=*/true, &table,
              nullptr);
  return table;
}

double exact_influence_cells(const InfoNetwork& net, const SeedSets& seeds,
                             int horizon, std::uint64_t budget,
                             unsigned threads) {
  if (horizon < 1) throw Error(Errc::bad_input, "horizon must be >= 1");
  double sigma = 0.0;
  sweep_cells(net, seeds, horizon, budget, threads, /*want_table=*/false,
              nullptr, &sigma);
  return sigma;
}

}  // namespace nlt
