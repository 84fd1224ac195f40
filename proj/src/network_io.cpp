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

#include "nlt/network_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace nlt {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(Errc::bad_input, what);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

json network_to_json(const InfoNetwork& net) {
  json j;
  j["nodes"] = net.non_void_labels();
  json edges = json::array();
  for (const LabeledEdge& e : net.original_edges()) {
    edges.push_back({{"src", e.src}, {"dst", e.dst}, {"weight", e.weight}});
  }
  j["edges"] = std::move(edges);
  return j;
}

InfoNetwork network_from_json(const json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array()) {
    parse_error("network JSON needs a \"nodes\" array");
  }
  std::vector<std::string> labels;
  for (const auto& node : j["nodes"]) labels.push_back(node.get<std::string>());
  std::vector<LabeledEdge> edges;
  if (j.contains("edges")) {
    for (const auto& e : j["edges"]) {
      if (!e.is_object() || !e.contains("src") || !e.contains("dst") ||
          !e.contains("weight")) {
        parse_error("network edge needs src, dst and weight");
      }
      edges.push_back({e["src"].get<std::string>(), e["dst"].get<std::string>(),
                       e["weight"].get<double>()});
    }
  }
  return build_network(labels, edges);
}

InfoNetwork network_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) parse_error("empty CSV edge list");
  {
    auto header = split_csv_line(line);
    if (header.size() != 3 || header[0] != "src" || header[1] != "dst" ||
        header[2] != "weight") {
      parse_error("CSV edge list requires the header row: src,dst,weight");
    }
  }
  std::vector<std::string> labels;
  std::vector<LabeledEdge> edges;
  auto note_label = [&](const std::string& l) {
    if (std::find(labels.begin(), labels.end(), l) == labels.end()) {
      labels.push_back(l);
    }
  };
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 3) parse_error("malformed CSV row: " + line);
    double weight = 0.0;
    try {
      std::size_t pos = 0;
      weight = std::stod(fields[2], &pos);
      if (pos != fields[2].size()) parse_error("bad weight: " + fields[2]);
    } catch (const std::exception&) {
      parse_error("bad weight: " + fields[2]);
    }
    note_label(fields[0]);
    note_label(fields[1]);
    edges.push_back({fields[0], fields[1], weight});
  }
  return build_network(labels, edges);
}

InfoNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open network file: " + path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    return network_from_csv(in);
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    parse_error("invalid JSON in " + path + ": " + e.what());
  }
  return network_from_json(j);
}

UndirectedGraph undirected_from_json(const json& j) {
  if (!j.is_object() || !j.contains("nodes")) {
    parse_error("graph JSON needs a \"nodes\" array");
  }
  UndirectedGraph g;
  for (const auto& node : j["nodes"]) g.labels.push_back(node.get<std::string>());
  if (j.contains("edges")) {
    for (const auto& e : j["edges"]) {
      if (e.is_array() && e.size() == 2) {
        g.edges.push_back({e[0].get<std::string>(), e[1].get<std::string>()});
      } else if (e.is_object() && e.contains("src") && e.contains("dst")) {
        g.edges.push_back({e["src"].get<std::string>(), e["dst"].get<std::string>()});
      } else {
        parse_error("graph edge must be a pair or {src,dst}");
      }
    }
  }
  return g;
}

UndirectedGraph load_undirected(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open graph file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    parse_error("invalid JSON in " + path + ": " + e.what());
  }
  return undirected_from_json(j);
}

std::string trajectory_to_csv(const InfoNetwork& net, const Trajectory& traj) {
  std::ostringstream out;
  out << 't';
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!net.is_void(v)) out << ',' << net.label(v);
  }
  out << '\n';
  for (int t = 0; t <= traj.horizon; ++t) {
    out << t;
    for (NodeId v = 0; v < net.node_count(); ++v) {
      if (!net.is_void(v)) out << ',' << (traj.at(t, v) ? 1 : 0);
    }
    out << '\n';
  }
  return out.str();
}

std::string prob_table_to_csv(const InfoNetwork& net, const ProbTable& table) {
  std::ostringstream out;
  out << 't';
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!net.is_void(v)) out << ',' << net.label(v);
  }
  out << '\n';
  char buf[32];
  for (int t = 0; t <= table.horizon; ++t) {
    out << t;
    for (NodeId v = 0; v < net.node_count(); ++v) {
      if (net.is_void(v)) continue;
      std::snprintf(buf, sizeof buf, "%.17g", table.at(t, v));
      out << ',' << buf;
    }
    out << '\n';
  }
  return out.str();
}

json estimate_to_json(const MonteCarloEstimate& est) {
  return json{{"mean", est.mean},
              {"stderr", est.stderr_of_mean},
              {"samples", est.samples},
              {"seed", est.seed}};
}

json counterexample_to_json(const Counterexample& cex) {
  json network;
  network["nodes"] = cex.labels;
  json edges = json::array();
  for (const LabeledEdge& e : cex.edges) {
    edges.push_back({{"src", e.src}, {"dst", e.dst}, {"weight", e.weight}});
  }
  network["edges"] = std::move(edges);
  json witness{{"horizon", cex.horizon},
               {"vstar", cex.vstar},
               {"small_set", cex.small_set},
               {"large_set", cex.large_set},
               {"added", cex.added},
               {"gap_small_per_t", cex.gap_small_per_t},
               {"gap_large_per_t", cex.gap_large_per_t},
               {"violation", cex.violation},
               {"amplifier", cex.amplifier},
               {"amplified_violation", cex.amplified_violation},
               {"oracle", cex.oracle}};
  return json{{"network", std::move(network)}, {"witness", std::move(witness)}};
}

Counterexample counterexample_from_json(const json& j) {
  if (!j.contains("network") || !j.contains("witness")) {
    parse_error("counterexample JSON needs network and witness blocks");
  }
  Counterexample cex;
  const json& network = j["network"];
  for (const auto& node : network["nodes"]) {
    cex.labels.push_back(node.get<std::string>());
  }
  for (const auto& e : network["edges"]) {
    cex.edges.push_back({e["src"].get<std::string>(), e["dst"].get<std::string>(),
                         e["weight"].get<double>()});
  }
  const json& w = j["witness"];
  cex.horizon = w["horizon"].get<int>();
  cex.vstar = w["vstar"].get<std::string>();
  cex.small_set = w["small_set"].get<std::vector<std::string>>();
  cex.large_set = w["large_set"].get<std::vector<std::string>>();
  cex.added = w["added"].get<std::string>();
  cex.gap_small_per_t = w["gap_small_per_t"].get<std::vector<double>>();
  cex.gap_large_per_t = w["gap_large_per_t"].get<std::vector<double>>();
  cex.violation = w["violation"].get<double>();
  cex.amplifier = w["amplifier"].get<int>();
  cex.amplified_violation = w["amplified_violation"].get<double>();
  cex.oracle = w.value("oracle", "cells");
  return cex;
}

}  // namespace nlt
