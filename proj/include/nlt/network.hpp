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

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nlt/errors.hpp"

namespace nlt {

// Dense node index. External identities are string labels; the mapping is
// fixed at construction time.
using NodeId = std::uint32_t;

inline constexpr std::string_view kVoidLabel = "__void";
inline constexpr std::string_view kReductionDummyLabel = "__dummy";
inline constexpr double kWeightTol = 1e-12;

// Small sorted-unique node set with value semantics.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<NodeId> ids) : ids_(ids) { normalize(); }
  explicit NodeSet(std::vector<NodeId> ids) : ids_(std::move(ids)) { normalize(); }

  bool contains(NodeId v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
  }
  void insert(NodeId v) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) ids_.insert(it, v);
  }
  void erase(NodeId v) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it != ids_.end() && *it == v) ids_.erase(it);
  }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<NodeId>& ids() const { return ids_; }

  NodeSet plus(NodeId v) const {
    NodeSet out = *this;
    out.insert(v);
    return out;
  }
  friend NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::back_inserter(out.ids_));
    return out;
  }
  friend NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out.ids_));
    return out;
  }
  friend bool is_subset(const NodeSet& a, const NodeSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }
  friend bool intersects(const NodeSet& a, const NodeSet& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        return true;
      }
    }
    return false;
  }
  bool operator==(const NodeSet&) const = default;

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }
  std::vector<NodeId> ids_;
};

struct OutEdge {
  NodeId dst;
  double weight;
};

struct LabeledEdge {
  std::string src;
  std::string dst;
  double weight;
};

// Directed weighted information network, normalized so every non-void node's
// outgoing weights sum to 1 (slack routed to the void node). Immutable after
// construction; safe to share across threads.
class InfoNetwork {
 public:
  InfoNetwork() = default;  // empty, inert; assign from build_network/assemble

  std::size_t node_count() const { return labels_.size(); }
  std::size_t non_void_count() const { return labels_.size() - 1; }
  NodeId void_node() const { return void_id_; }
  bool is_void(NodeId v) const { return v == void_id_; }
  bool acyclic() const { return acyclic_; }

  std::span<const OutEdge> out(NodeId v) const {
    return {adj_.data() + row_[v], adj_.data() + row_[v + 1]};
  }
  const std::string& label(NodeId v) const { return labels_[v]; }
  std::optional<NodeId> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  // Resolves a label, throwing Errc::invalid_seed on miss (the common caller
  // is seed-set parsing).
  NodeId resolve(std::string_view label) const;

  // False for the void node and for dummy-chain nodes: those never count
  // toward influence totals.
  bool counts_for_influence(NodeId v) const { return countable_[v] != 0; }
  std::size_t countable_count() const { return countable_count_; }

  // Pre-normalization edges (void edges never included). Rebuilding from
  // these reproduces the normalized weights bit for bit.
  const std::vector<LabeledEdge>& original_edges() const { return original_edges_; }
  std::vector<std::string> non_void_labels() const;

  // Internal assembly used by build_network and the network transformations
  // (which may add reserved-label nodes and non-countable dummies).
  static InfoNetwork assemble(std::vector<std::string> labels,
                              const std::vector<LabeledEdge>& edges,
                              std::vector<std::uint8_t> countable);

 private:
  std::vector<std::string> labels_;  // void last
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::uint32_t> row_;  // CSR offsets, size node_count()+1
  std::vector<OutEdge> adj_;        // normalized adjacency incl. void edges
  std::vector<std::uint8_t> countable_;
  std::vector<LabeledEdge> original_edges_;
  NodeId void_id_ = 0;
  std::size_t countable_count_ = 0;
  bool acyclic_ = true;
};

// Builds and normalizes a network from user input. Labels must be unique and
// may not start with the reserved "__" prefix; weights must lie in (0,1] and
// sum to at most 1 per node.
InfoNetwork build_network(const std::vector<std::string>& labels,
                          const std::vector<LabeledEdge>& edges);

// Descendant-first evaluation order: the void node first, and for every edge
// (v,u) with non-void u, u precedes v. Throws CyclicNetworkError with one
// witness cycle otherwise.
std::vector<NodeId> topological_order(const InfoNetwork& net);

// Result of rewiring permanent seeds through dummy chains so a transient-only
// process emulates permanence for `horizon` steps.
struct TransformedNetwork {
  InfoNetwork net;
  std::vector<NodeId> node_map;  // base id -> transformed id
  NodeSet permanent_sources;     // the rewired seeds, in transformed ids
  NodeSet dummies;
  int horizon = 0;

  // Transient seed to use on the transformed network: A u Ahat u D.
  NodeSet transient_seed(const NodeSet& transient_in_base_ids) const;
};

TransformedNetwork transform_permanent(const InfoNetwork& net,
                                       const NodeSet& permanent, int horizon);

// Attaches `count` fresh leaf nodes, each with a single weight-1 edge into
// `target`, magnifying the target's contribution to the objective.
InfoNetwork amplify(const InfoNetwork& net, NodeId target, int count);

struct UndirectedGraph {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> edges;
};

struct ReductionInstance {
  InfoNetwork net;
  NodeId dummy;
};

// Directs each undirected edge from the later to the earlier node of
// `ordering` (defaults to label order as given), appends a sink dummy wired
// from every node with no outgoing edge, and splits each node's outgoing
// weight uniformly. The result is always acyclic and pairs with horizon 1.
ReductionInstance vertex_cover_reduction(
    const UndirectedGraph& graph,
    const std::optional<std::vector<std::string>>& ordering = std::nullopt);

}  // namespace nlt
