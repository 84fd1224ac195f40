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

#include "nlt/instance_gen.hpp"

#include <algorithm>
#include <string>

namespace nlt {

namespace {

std::vector<std::string> make_labels(int n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back("n" + std::to_string(i));
  return labels;
}

// Assigns weights to each node's chosen targets, respecting the per-node
// sum <= 1 constraint and keeping every weight strictly inside (0,1).
void assign_weights(Xoshiro256pp& rng, const RandomNetOptions& opt,
                    const std::vector<std::string>& labels,
                    const std::vector<std::vector<int>>& targets,
                    std::vector<LabeledEdge>& edges) {
  for (std::size_t v = 0; v < targets.size(); ++v) {
    const std::size_t d = targets[v].size();
    if (d == 0) continue;
    if (opt.grid_weights) {
      // Tenths grid with exact integer feasibility check.
      std::vector<int> tenths(d);
      while (true) {
        int sum = 0;
        for (std::size_t i = 0; i < d; ++i) {
          tenths[i] = 1 + static_cast<int>(rng.next_below(9));
          sum += tenths[i];
        }
        if (sum <= 10) break;
      }
      for (std::size_t i = 0; i < d; ++i) {
        edges.push_back({labels[v], labels[targets[v][i]],
                         static_cast<double>(tenths[i]) / 10.0});
      }
    } else {
      std::vector<double> raw(d);
      double sum = 0.0;
      for (double& x : raw) {
        x = rng.next_open01();
        sum += x;
      }
      double total = 0.25 + 0.7 * rng.next_open01();
      if (d >= 2 && rng.next_open01() < opt.saturate_prob) total = 1.0;
      for (std::size_t i = 0; i < d; ++i) {
        edges.push_back({labels[v], labels[targets[v][i]], total * raw[i] / sum});
      }
    }
  }
}

std::vector<std::vector<int>> sample_targets(
    Xoshiro256pp& rng, int n, int max_edges,
    const std::vector<std::pair<int, int>>& candidates, int grid_degree_cap) {
  std::vector<std::pair<int, int>> pool = candidates;
  // Partial Fisher-Yates for a without-replacement sample.
  const std::size_t want =
      std::min<std::size_t>(pool.size(), 1 + rng.next_below(max_edges));
  std::vector<std::vector<int>> targets(n);
  for (std::size_t i = 0; i < want; ++i) {
    const std::size_t j = i + rng.next_below(pool.size() - i);
    std::swap(pool[i], pool[j]);
    auto [src, dst] = pool[i];
    if (grid_degree_cap > 0 &&
        targets[src].size() >= static_cast<std::size_t>(grid_degree_cap)) {
      continue;
    }
    targets[src].push_back(dst);
  }
  for (auto& list : targets) std::sort(list.begin(), list.end());
  return targets;
}

InfoNetwork build_from_targets(Xoshiro256pp& rng, const RandomNetOptions& opt,
                               int n, const std::vector<std::vector<int>>& targets) {
  const std::vector<std::string> labels = make_labels(n);
  std::vector<LabeledEdge> edges;
  assign_weights(rng, opt, labels, targets, edges);
  return build_network(labels, edges);
}

}  // namespace

InfoNetwork random_dag(Xoshiro256pp& rng, const RandomNetOptions& opt) {
  const int n = opt.nodes;
  std::vector<std::pair<int, int>> candidates;
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < i; ++j) candidates.push_back({i, j});
  }
  const int cap = opt.grid_weights ? 3 : 0;
  return build_from_targets(rng, opt,
                            n, sample_targets(rng, n, opt.max_edges, candidates, cap));
}

InfoNetwork random_cyclic_network(Xoshiro256pp& rng,
                                  const RandomNetOptions& opt) {
  const int n = std::max(2, opt.nodes);
  std::vector<std::pair<int, int>> candidates;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) candidates.push_back({i, j});
    }
  }
  const int cap = opt.grid_weights ? 3 : 0;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto targets = sample_targets(rng, n, opt.max_edges, candidates, cap);
    // Force a 2-cycle if the sample came out acyclic.
    InfoNetwork net = build_from_targets(rng, opt, n, targets);
    if (!net.acyclic()) return net;
    const int a = static_cast<int>(rng.next_below(n));
    const int b = (a + 1 + static_cast<int>(rng.next_below(n - 1))) % n;
    auto add_if_absent = [&](int src, int dst) {
      auto& list = targets[src];
      if (std::find(list.begin(), list.end(), dst) == list.end() &&
          (cap == 0 || list.size() < static_cast<std::size_t>(cap))) {
        list.push_back(dst);
        std::sort(list.begin(), list.end());
      }
    };
    add_if_absent(a, b);
    add_if_absent(b, a);
    net = build_from_targets(rng, opt, n, targets);
    if (!net.acyclic()) return net;
  }
  throw Error(Errc::bad_input, "failed to sample a cyclic network");
}

InfoNetwork random_self_loop_network(Xoshiro256pp& rng,
                                     const RandomNetOptions& opt) {
  const int n = opt.nodes;
  std::vector<std::pair<int, int>> candidates;
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < i; ++j) candidates.push_back({i, j});
  }
  const int cap = opt.grid_weights ? 3 : 0;
  auto targets = sample_targets(rng, n, opt.max_edges, candidates, cap);
  const int loop_node = static_cast<int>(rng.next_below(n));
  auto& list = targets[loop_node];
  if (std::find(list.begin(), list.end(), loop_node) == list.end()) {
    if (cap > 0 && list.size() >= static_cast<std::size_t>(cap)) list.pop_back();
    list.push_back(loop_node);
    std::sort(list.begin(), list.end());
  }
  return build_from_targets(rng, opt, n, targets);
}

SeedSets random_seed_sets(Xoshiro256pp& rng, const InfoNetwork& net,
                          bool allow_permanent, double transient_prob,
                          double permanent_prob) {
  NodeSet transient;
  NodeSet permanent;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (net.is_void(v)) continue;
    const double u = rng.next_open01();
    if (u < transient_prob) {
      transient.insert(v);
    } else if (allow_permanent && u < transient_prob + permanent_prob) {
      permanent.insert(v);
    }
  }
  return SeedSets(net, std::move(transient), std::move(permanent));
}

}  // namespace nlt
