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

#include <string>

#include <json.hpp>

#include "nlt/diffusion.hpp"
#include "nlt/exact.hpp"
#include "nlt/network.hpp"
#include "nlt/verify.hpp"

namespace nlt {

// Network JSON: {"nodes":[labels], "edges":[{"src","dst","weight"}]} with
// pre-normalization weights; the void node is never serialized.
nlohmann::json network_to_json(const InfoNetwork& net);
InfoNetwork network_from_json(const nlohmann::json& j);

// CSV alternative: required header "src,dst,weight"; nodes appear in first-use
// order (isolated nodes need the JSON format).
InfoNetwork network_from_csv(std::istream& in);

// Dispatches on the .json/.csv extension.
InfoNetwork load_network(const std::string& path);

// Undirected graph JSON: {"nodes":[labels], "edges":[{"src","dst"}]} (pairs
// ["a","b"] are accepted too).
UndirectedGraph undirected_from_json(const nlohmann::json& j);
UndirectedGraph load_undirected(const std::string& path);

// Trajectory CSV: header "t,<labels>", one row per time step, cells 0/1.
// Non-void nodes only, in id order.
std::string trajectory_to_csv(const InfoNetwork& net, const Trajectory& traj);

// Probability-table CSV, 17 significant digits.
std::string prob_table_to_csv(const InfoNetwork& net, const ProbTable& table);

nlohmann::json estimate_to_json(const MonteCarloEstimate& est);

nlohmann::json counterexample_to_json(const Counterexample& cex);
Counterexample counterexample_from_json(const nlohmann::json& j);

}  // namespace nlt
