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

#include "nlt/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <queue>
#include <set>

#include "nlt/parallel.hpp"

namespace nlt {

const char* evaluator_name(EvaluatorKind kind) noexcept {
  switch (kind) {
    case EvaluatorKind::exact_dag: return "exact-dag";
    case EvaluatorKind::cells: return "cells";
    case EvaluatorKind::monte_carlo: return "monte-carlo";
  }
  return "?";
}

EvaluatorKind evaluator_from_name(std::string_view name) {
  if (name == "exact-dag") return EvaluatorKind::exact_dag;
  if (name == "cells") return EvaluatorKind::cells;
  if (name == "monte-carlo" || name == "mc") return EvaluatorKind::monte_carlo;
  throw Error(Errc::bad_input, "unknown evaluator: " + std::string(name));
}

EvalResult Evaluator::evaluate(const InfoNetwork& net, const SeedSets& seeds,
                               int horizon) const {
  switch (kind) {
    case EvaluatorKind::exact_dag:
      return {expected_influence_dag(net, seeds, horizon), 0.0};
    case EvaluatorKind::cells:
      return {exact_influence_cells(net, seeds, horizon, cell_budget, threads),
              0.0};
    case EvaluatorKind::monte_carlo: {
      const MonteCarloEstimate est =
          monte_carlo_influence(net, seeds, horizon, samples, seed, threads);
      return {est.mean, est.stderr_of_mean};
    }
  }
  throw Error(Errc::bad_input, "invalid evaluator kind");
}

double marginal_gain(const InfoNetwork& net, const SeedSets& seeds, NodeId node,
                     SeedRole role, int horizon, const Evaluator& evaluator) {
  if (net.is_void(node)) {
    throw Error(Errc::invalid_seed, "candidate must be a non-void node");
  }
  if (seeds.transient.contains(node) || seeds.permanent.contains(node)) {
    throw Error(Errc::candidate_already_seeded,
                "candidate already seeded: " + net.label(node));
  }
  if (evaluator.kind == EvaluatorKind::exact_dag && role == SeedRole::transient) {
    if (!net.acyclic()) topological_order(net);  // same refusal as the evaluator
    // Walk decomposition: adding transient w contributes, per (v,t),
    // Pr[R_v^t({w}) \ S_v^t(Ahat)] independently of the current A.
    const ProbTable gain =
        reach_table_avoiding(net, NodeSet{node}, seeds.permanent, horizon);
    double total = 0.0;
    for (int t = 1; t <= horizon; ++t) {
      for (NodeId v = 0; v < net.node_count(); ++v) {
        if (net.counts_for_influence(v)) total += gain.at(t, v);
      }
    }
    return total / horizon;
  }

  SeedSets grown = seeds;
  if (role == SeedRole::transient) {
    grown.transient.insert(node);
  } else {
    grown.permanent.insert(node);
    grown.transient.erase(node);
  }
  return evaluator.evaluate(net, grown, horizon).value -
         evaluator.evaluate(net, seeds, horizon).value;
}

namespace {

struct Candidate {
  NodeId node;
  SeedRole role;
};

// Fixed tie-break: permanent before transient, then ascending label.
std::vector<Candidate> ordered_candidates(const InfoNetwork& net) {
  std::vector<NodeId> nodes;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!net.is_void(v)) nodes.push_back(v);
  }
  std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
    return net.label(a) < net.label(b);
  });
  std::vector<Candidate> out;
  out.reserve(nodes.size() * 2);
  for (NodeId v : nodes) out.push_back({v, SeedRole::permanent});
  for (NodeId v : nodes) out.push_back({v, SeedRole::transient});
  return out;
}

SeedSets with_candidate(const SeedSets& seeds, const Candidate& c) {
  SeedSets grown = seeds;
  if (c.role == SeedRole::transient) {
    grown.transient.insert(c.node);
  } else {
    grown.permanent.insert(c.node);
  }
  return grown;
}

struct GreedyContext {
  const InfoNetwork& net;
  int horizon;
  const Evaluator& evaluator;
  unsigned threads;
  std::atomic<std::uint64_t> evaluations{0};

  double value(const SeedSets& seeds) {
    evaluations.fetch_add(1, std::memory_order_relaxed);
    return evaluator.evaluate(net, seeds, horizon).value;
  }
};

bool feasible(const Candidate& c, const SeedSets& seeds, std::size_t k,
              std::size_t k_hat) {
  if (seeds.transient.contains(c.node) || seeds.permanent.contains(c.node)) {
    return false;
  }
  return c.role == SeedRole::transient ? seeds.transient.size() < k
                                       : seeds.permanent.size() < k_hat;
}

SeedSets greedy_one_split(GreedyContext& ctx, std::size_t k, std::size_t k_hat,
                          const std::vector<Candidate>& order) {
  SeedSets seeds;
  while (seeds.transient.size() < k || seeds.permanent.size() < k_hat) {
    std::vector<Candidate> cand;
    for (const Candidate& c : order) {
      if (feasible(c, seeds, k, k_hat)) cand.push_back(c);
    }
    if (cand.empty()) break;
    const double base = ctx.value(seeds);
    std::vector<double> gain(cand.size());
    for_each_block(cand.size(), ctx.threads, [&](std::size_t i) {
      gain[i] = ctx.value(with_candidate(seeds, cand[i])) - base;
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < cand.size(); ++i) {
      if (gain[i] > gain[best]) best = i;  // ties keep the earlier candidate
    }
    if (!(gain[best] > 0.0)) break;
    seeds = with_candidate(seeds, cand[best]);
  }
  return seeds;
}

SeedSets lazy_one_split(GreedyContext& ctx, std::size_t k, std::size_t k_hat,
                        const std::vector<Candidate>& order) {
  struct Entry {
    double gain;
    std::size_t rank;  // index into the tie-break order
    std::uint32_t stamp;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.rank > b.rank;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);
  // Stale gains are mathematical upper bounds, but float evaluation can drift
  // them an ulp below the re-evaluated value. Any stale bound within this
  // slack of the fresh head is refreshed before the head is committed, so the
  // selection matches the eager scan exactly.
  constexpr double kStaleSlack = 1e-9;

  SeedSets seeds;
  double base = ctx.value(seeds);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!feasible(order[i], seeds, k, k_hat)) continue;
    queue.push({ctx.value(with_candidate(seeds, order[i])) - base, i, 0});
  }

  std::uint32_t round = 0;
  while (!queue.empty()) {
    Entry top = queue.top();
    queue.pop();
    const Candidate& c = order[top.rank];
    if (!feasible(c, seeds, k, k_hat)) continue;
    if (top.stamp != round) {
      top.gain = ctx.value(with_candidate(seeds, c)) - base;
      top.stamp = round;
      queue.push(top);
      continue;
    }
    if (!queue.empty() && queue.top().stamp != round &&
        queue.top().gain >= top.gain - kStaleSlack) {
      Entry near = queue.top();
      queue.pop();
      const Candidate& nc = order[near.rank];
      if (feasible(nc, seeds, k, k_hat)) {
        near.gain = ctx.value(with_candidate(seeds, nc)) - base;
        near.stamp = round;
        queue.push(near);
      }
      queue.push(top);
      continue;
    }
    if (!(top.gain > 0.0)) break;  // fresh head dominates every stale bound
    seeds = with_candidate(seeds, c);
    base = ctx.value(seeds);  // same base floats as the eager scan
    ++round;
    if (seeds.transient.size() >= k && seeds.permanent.size() >= k_hat) break;
  }
  return seeds;
}

}  // namespace

Solution greedy_max(const InfoNetwork& net, const Budget& budget, int horizon,
                    const Evaluator& evaluator, bool lazy, unsigned threads) {
  if (horizon < 1) throw Error(Errc::bad_input, "horizon must be >= 1");
  if (!(budget.cost_transient > 0.0) || !(budget.cost_permanent > 0.0) ||
      budget.total < 0.0) {
    throw Error(Errc::bad_input, "budget costs must be positive and K >= 0");
  }

  GreedyContext ctx{net, horizon, evaluator, threads};
  const std::vector<Candidate> order = ordered_candidates(net);
  const std::size_t n = net.non_void_count();

  const auto max_k = static_cast<std::size_t>(
      std::min<double>(std::floor(budget.total / budget.cost_transient),
                       static_cast<double>(n)));
  std::set<std::pair<std::size_t, std::size_t>> splits;
  for (std::size_t k = 0; k <= max_k; ++k) {
    const double rest = budget.total - static_cast<double>(k) * budget.cost_transient;
    const auto k_hat = static_cast<std::size_t>(std::min<double>(
        std::floor(rest / budget.cost_permanent), static_cast<double>(n)));
    splits.insert({k, k_hat});
  }

  Solution best;
  best.evaluator = evaluator.kind;
  bool have = false;
  for (const auto& [k, k_hat] : splits) {
    SeedSets seeds = lazy ? lazy_one_split(ctx, k, k_hat, order)
                          : greedy_one_split(ctx, k, k_hat, order);
    const double value = ctx.value(seeds);
    if (!have || value > best.value) {
      have = true;
      best.seeds = std::move(seeds);
      best.value = value;
      best.k = static_cast<int>(k);
      best.k_hat = static_cast<int>(k_hat);
    }
  }
  best.evaluations = ctx.evaluations.load();
  return best;
}

namespace {

// Lexicographic solution key: sorted permanent labels, then sorted transient
// labels. Used only to break exact value ties deterministically.
std::pair<std::vector<std::string>, std::vector<std::string>> solution_key(
    const InfoNetwork& net, const SeedSets& seeds) {
  std::pair<std::vector<std::string>, std::vector<std::string>> key;
  for (NodeId v : seeds.permanent) key.first.push_back(net.label(v));
  for (NodeId v : seeds.transient) key.second.push_back(net.label(v));
  std::sort(key.first.begin(), key.first.end());
  std::sort(key.second.begin(), key.second.end());
  return key;
}

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double out = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    out = out * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return out;
}

}  // namespace

Solution brute_force_opt(const InfoNetwork& net, const Budget& budget,
                         int horizon, const Evaluator& evaluator,
                         std::uint64_t max_pairs) {
  if (horizon < 1) throw Error(Errc::bad_input, "horizon must be >= 1");
  const std::size_t n = net.non_void_count();

  double pair_count = 0.0;
  for (std::size_t a_hat = 0; a_hat <= n; ++a_hat) {
    for (std::size_t a = 0; a + a_hat <= n; ++a) {
      if (budget.admits(a, a_hat)) {
        pair_count += binomial(n, a_hat) * binomial(n - a_hat, a);
      }
    }
  }
  if (pair_count > static_cast<double>(max_pairs)) {
    throw Error(Errc::search_budget_exceeded,
                "feasible seed pairs exceed the search budget");
  }

  // Non-void nodes occupy ids 0..n-1 (the void node is appended last).
  Solution best;
  best.evaluator = evaluator.kind;
  bool have = false;
  std::pair<std::vector<std::string>, std::vector<std::string>> best_key;
  std::uint64_t evals = 0;

  for (std::size_t a_hat = 0; a_hat <= n; ++a_hat) {
    for (std::size_t a = 0; a + a_hat <= n; ++a) {
      if (!budget.admits(a, a_hat)) continue;
      for_each_combination(n, a_hat, [&](const std::vector<std::size_t>& perm_idx) {
        NodeSet perm;
        std::vector<NodeId> rest;
        std::vector<std::uint8_t> in_perm(n, 0);
        for (std::size_t i : perm_idx) {
          perm.insert(static_cast<NodeId>(i));
          in_perm[i] = 1;
        }
        for (std::size_t i = 0; i < n; ++i) {
          if (!in_perm[i]) rest.push_back(static_cast<NodeId>(i));
        }
        for_each_combination(rest.size(), a, [&](const std::vector<std::size_t>& tr_idx) {
          NodeSet trans;
          for (std::size_t i : tr_idx) trans.insert(rest[i]);
          SeedSets seeds(net, std::move(trans), perm);
          const double value = evaluator.evaluate(net, seeds, horizon).value;
          ++evals;
          if (!have || value > best.value) {
            have = true;
            best.value = value;
            best.seeds = seeds;
            best_key = solution_key(net, seeds);
          } else if (value == best.value) {
            auto key = solution_key(net, seeds);
            if (key < best_key) {
              best.seeds = seeds;
              best_key = std::move(key);
            }
          }
        });
      });
    }
  }
  best.evaluations = evals;
  best.k = static_cast<int>(best.seeds.transient.size());
  best.k_hat = static_cast<int>(best.seeds.permanent.size());
  return best;
}

}  // namespace nlt
