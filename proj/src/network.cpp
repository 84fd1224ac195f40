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

#include "nlt/network.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <utility>

namespace nlt {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::duplicate_edge: return "DuplicateEdge";
    case Errc::weight_out_of_range: return "WeightOutOfRange";
    case Errc::weight_sum_exceeds_one: return "WeightSumExceedsOne";
    case Errc::unknown_endpoint: return "UnknownEndpoint";
    case Errc::reserved_label: return "ReservedLabel";
    case Errc::cyclic_network: return "CyclicNetwork";
    case Errc::void_in_permanent_set: return "VoidInPermanentSet";
    case Errc::void_target: return "VoidTarget";
    case Errc::invalid_seed: return "InvalidSeed";
    case Errc::missing_threshold: return "MissingThreshold";
    case Errc::cell_budget_exceeded: return "CellBudgetExceeded";
    case Errc::search_budget_exceeded: return "SearchBudgetExceeded";
    case Errc::candidate_already_seeded: return "CandidateAlreadySeeded";
    case Errc::bad_input: return "BadInput";
  }
  return "UnknownError";
}

NodeId InfoNetwork::resolve(std::string_view label) const {
  auto id = find(label);
  if (!id) {
    throw Error(Errc::invalid_seed, "unknown node label: " + std::string(label));
  }
  return *id;
}

std::vector<std::string> InfoNetwork::non_void_labels() const {
  std::vector<std::string> out(labels_.begin(), labels_.end() - 1);
  return out;
}

InfoNetwork InfoNetwork::assemble(std::vector<std::string> labels,
                                  const std::vector<LabeledEdge>& edges,
                                  std::vector<std::uint8_t> countable) {
  InfoNetwork net;
  const std::size_t n = labels.size();
  if (n == 0) throw Error(Errc::bad_input, "network needs at least one node");

  net.labels_ = std::move(labels);
  net.labels_.emplace_back(kVoidLabel);
  net.void_id_ = static_cast<NodeId>(n);
  net.countable_ = std::move(countable);
  net.countable_.push_back(0);  // void

  net.index_.reserve(net.labels_.size());
  for (NodeId v = 0; v < net.labels_.size(); ++v) {
    if (net.labels_[v].empty()) throw Error(Errc::bad_input, "empty node label");
    if (!net.index_.emplace(net.labels_[v], v).second) {
      throw Error(Errc::bad_input, "duplicate node label: " + net.labels_[v]);
    }
  }
  for (std::uint8_t c : net.countable_) net.countable_count_ += c;

  // Validate and bucket edges per source node.
  std::vector<std::vector<OutEdge>> per_node(n);
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const LabeledEdge& e : edges) {
    auto src = net.find(e.src);
    auto dst = net.find(e.dst);
    if (!src || !dst || *src == net.void_id_ || *dst == net.void_id_) {
      throw Error(Errc::unknown_endpoint,
                  "edge endpoint not in node list: " + e.src + " -> " + e.dst);
    }
    if (!(e.weight > 0.0) || !(e.weight <= 1.0) || !std::isfinite(e.weight)) {
      std::ostringstream msg;
      msg << "edge weight out of range on " << e.src << " -> " << e.dst << ": "
          << e.weight;
      throw Error(Errc::weight_out_of_range, msg.str());
    }
    if (!seen.emplace(*src, *dst).second) {
      throw Error(Errc::duplicate_edge,
                  "parallel edge: " + e.src + " -> " + e.dst);
    }
    per_node[*src].push_back({*dst, e.weight});
    net.original_edges_.push_back(e);
  }

  // Normalize: route per-node slack to the void node, which keeps a weight-1
  // self-loop. Slack within kWeightTol of zero is dropped rather than emitted
  // as a degenerate void edge.
  net.row_.assign(net.labels_.size() + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    double sum = 0.0;
    for (const OutEdge& e : per_node[v]) sum += e.weight;
    const double slack = 1.0 - sum;
    if (slack < -kWeightTol) {
      throw Error(Errc::weight_sum_exceeds_one,
                  "outgoing weights of " + net.labels_[v] + " sum beyond 1");
    }
    if (slack > kWeightTol) per_node[v].push_back({net.void_id_, slack});
    net.row_[v + 1] = net.row_[v] + static_cast<std::uint32_t>(per_node[v].size());
  }
  net.row_[net.void_id_ + 1] = net.row_[net.void_id_] + 1;

  net.adj_.reserve(net.row_.back());
  for (NodeId v = 0; v < n; ++v) {
    net.adj_.insert(net.adj_.end(), per_node[v].begin(), per_node[v].end());
  }
  net.adj_.push_back({net.void_id_, 1.0});  // void self-loop

  // Acyclicity over non-void nodes (the void self-loop is exempt).
  enum : std::uint8_t { kWhite, kGray, kBlack };
  std::vector<std::uint8_t> color(n, kWhite);
  auto has_cycle = [&](auto&& self, NodeId v) -> bool {
    color[v] = kGray;
    for (const OutEdge& e : net.out(v)) {
      if (e.dst == net.void_id_) continue;
      if (color[e.dst] == kGray) return true;
      if (color[e.dst] == kWhite && self(self, e.dst)) return true;
    }
    color[v] = kBlack;
    return false;
  };
  net.acyclic_ = true;
  for (NodeId v = 0; v < n && net.acyclic_; ++v) {
    if (color[v] == kWhite && has_cycle(has_cycle, v)) net.acyclic_ = false;
  }
  return net;
}

InfoNetwork build_network(const std::vector<std::string>& labels,
                          const std::vector<LabeledEdge>& edges) {
  for (const std::string& label : labels) {
    if (label.rfind("__", 0) == 0) {
      throw Error(Errc::reserved_label,
                  "labels starting with \"__\" are reserved: " + label);
    }
  }
  std::vector<std::uint8_t> countable(labels.size(), 1);
  return InfoNetwork::assemble(labels, edges, std::move(countable));
}

std::vector<NodeId> topological_order(const InfoNetwork& net) {
  const NodeId void_id = net.void_node();
  enum : std::uint8_t { kWhite, kGray, kBlack };
  std::vector<std::uint8_t> color(net.node_count(), kWhite);
  std::vector<NodeId> order;
  order.reserve(net.node_count());
  order.push_back(void_id);

  std::vector<NodeId> stack;
  auto visit = [&](auto&& self, NodeId v) -> void {
    color[v] = kGray;
    stack.push_back(v);
    for (const OutEdge& e : net.out(v)) {
      if (e.dst == void_id) continue;
      if (color[e.dst] == kGray) {
        // Witness: the stack segment from e.dst to v, in cycle order.
        std::vector<NodeId> cycle;
        auto it = std::find(stack.begin(), stack.end(), e.dst);
        cycle.assign(it, stack.end());
        std::ostringstream msg;
        msg << "network has a directed cycle:";
        for (NodeId u : cycle) msg << ' ' << net.label(u);
        throw CyclicNetworkError(std::move(cycle), msg.str());
      }
      if (color[e.dst] == kWhite) self(self, e.dst);
    }
    stack.pop_back();
    color[v] = kBlack;
    order.push_back(v);  // post-order: descendants already emitted
  };
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (v != void_id && color[v] == kWhite) visit(visit, v);
  }
  return order;
}

namespace {

// Copies a network's non-void nodes and edges into label/edge lists so the
// transformations can extend them and reassemble. Normalization reproduces
// the original void slack bit for bit.
void copy_for_rebuild(const InfoNetwork& net, std::vector<std::string>& labels,
                      std::vector<LabeledEdge>& edges,
                      std::vector<std::uint8_t>& countable) {
  labels.clear();
  edges.clear();
  countable.clear();
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (net.is_void(v)) continue;
    labels.push_back(net.label(v));
    countable.push_back(net.counts_for_influence(v) ? 1 : 0);
    for (const OutEdge& e : net.out(v)) {
      if (e.dst == net.void_node()) continue;
      edges.push_back({net.label(v), net.label(e.dst), e.weight});
    }
  }
}

}  // namespace

NodeSet TransformedNetwork::transient_seed(const NodeSet& transient_in_base_ids) const {
  NodeSet seed = dummies;
  for (NodeId v : permanent_sources) seed.insert(v);
  for (NodeId v : transient_in_base_ids) seed.insert(node_map[v]);
  return seed;
}

TransformedNetwork transform_permanent(const InfoNetwork& net,
                                       const NodeSet& permanent, int horizon) {
  if (horizon < 1) throw Error(Errc::bad_input, "horizon must be >= 1");
  if (permanent.contains(net.void_node())) {
    throw Error(Errc::void_in_permanent_set,
                "the void node cannot be a permanent seed");
  }

  std::vector<std::string> labels;
  std::vector<LabeledEdge> edges;
  std::vector<std::uint8_t> countable;
  copy_for_rebuild(net, labels, edges, countable);

  // Drop every outgoing edge of a permanent seed, then route it through a
  // fresh chain of `horizon` dummy nodes ending at the void sink.
  std::erase_if(edges, [&](const LabeledEdge& e) {
    auto src = net.find(e.src);
    return src && permanent.contains(*src);
  });
  std::vector<std::string> dummy_labels;
  for (NodeId y : permanent) {
    std::string prev = net.label(y);
    for (int i = 1; i <= horizon; ++i) {
      std::string d = "__dummy:" + net.label(y) + ":" + std::to_string(i);
      labels.push_back(d);
      countable.push_back(0);
      dummy_labels.push_back(d);
      edges.push_back({prev, d, 1.0});
      prev = std::move(d);
    }
    // The chain tail keeps no outgoing edge; normalization points it at void.
  }

  TransformedNetwork out;
  out.net = InfoNetwork::assemble(std::move(labels), edges, std::move(countable));
  out.horizon = horizon;
  out.node_map.resize(net.node_count());
  for (NodeId v = 0; v < net.node_count(); ++v) {
    out.node_map[v] = net.is_void(v) ? out.net.void_node()
                                     : out.net.resolve(net.label(v));
  }
  for (NodeId y : permanent) out.permanent_sources.insert(out.node_map[y]);
  for (const std::string& d : dummy_labels) out.dummies.insert(out.net.resolve(d));
  return out;
}

InfoNetwork amplify(const InfoNetwork& net, NodeId target, int count) {
  if (net.is_void(target)) {
    throw Error(Errc::void_target, "cannot amplify the void node");
  }
  if (count < 1) throw Error(Errc::bad_input, "amplifier count must be >= 1");

  std::vector<std::string> labels;
  std::vector<LabeledEdge> edges;
  std::vector<std::uint8_t> countable;
  copy_for_rebuild(net, labels, edges, countable);
  for (int i = 1; i <= count; ++i) {
    std::string leaf = "__amp:" + std::to_string(i);
    labels.push_back(leaf);
    countable.push_back(1);
    edges.push_back({std::move(leaf), net.label(target), 1.0});
  }
  return InfoNetwork::assemble(std::move(labels), edges, std::move(countable));
}

ReductionInstance vertex_cover_reduction(
    const UndirectedGraph& graph,
    const std::optional<std::vector<std::string>>& ordering) {
  if (graph.labels.empty()) {
    throw Error(Errc::bad_input, "reduction needs at least one vertex");
  }
  std::unordered_map<std::string, std::size_t> rank;
  const std::vector<std::string>& order = ordering ? *ordering : graph.labels;
  if (order.size() != graph.labels.size()) {
    throw Error(Errc::bad_input, "ordering must list every vertex exactly once");
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!rank.emplace(order[i], i).second) {
      throw Error(Errc::bad_input, "ordering repeats vertex " + order[i]);
    }
  }
  for (const std::string& label : graph.labels) {
    if (!rank.count(label)) {
      throw Error(Errc::bad_input, "ordering is missing vertex " + label);
    }
  }

  // Direct each edge from the later node to the earlier one: the
  // higher-ordered endpoint is influenced by the lower-ordered one.
  std::unordered_map<std::string, std::vector<std::string>> outgoing;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& [a, b] : graph.edges) {
    if (!rank.count(a) || !rank.count(b)) {
      throw Error(Errc::unknown_endpoint, "edge endpoint not listed: " + a + "-" + b);
    }
    if (a == b) throw Error(Errc::bad_input, "self-loop in undirected input: " + a);
    auto key = std::minmax(a, b);
    if (!seen.emplace(key.first, key.second).second) {
      throw Error(Errc::duplicate_edge, "repeated undirected edge: " + a + "-" + b);
    }
    if (rank[a] > rank[b]) {
      outgoing[a].push_back(b);
    } else {
      outgoing[b].push_back(a);
    }
  }

  std::vector<std::string> labels = graph.labels;
  labels.emplace_back(kReductionDummyLabel);
  std::vector<LabeledEdge> edges;
  for (const std::string& v : graph.labels) {
    auto it = outgoing.find(v);
    if (it == outgoing.end() || it->second.empty()) {
      edges.push_back({v, std::string(kReductionDummyLabel), 1.0});
      continue;
    }
    const double w = 1.0 / static_cast<double>(it->second.size());
    for (const std::string& u : it->second) edges.push_back({v, u, w});
  }
  // The dummy itself keeps no outgoing edge; normalization wires it to void,
  // so it can only ever be activated by seeding it.

  std::vector<std::uint8_t> countable(labels.size(), 1);
  ReductionInstance out{InfoNetwork::assemble(std::move(labels), edges,
                                              std::move(countable)),
                        0};
  out.dummy = out.net.resolve(kReductionDummyLabel);
  return out;
}

}  // namespace nlt
