// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "nmqc/topology.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nmqc {

namespace {

void build_adjacency(CouplingGraph& g) {
  g.adjacency.assign(g.n_qubits, {});
  for (const auto& [a, b] : g.edges) {
    g.adjacency[a].push_back(b);
    g.adjacency[b].push_back(a);
  }
  for (auto& nbrs : g.adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
  }
}

CouplingGraph make_graph(int n_qubits, std::vector<std::pair<int, int>> edges,
                         std::vector<double> readout_error) {
  if (n_qubits < 1) {
    throw std::invalid_argument("graph needs n_qubits >= 1");
  }
  CouplingGraph g;
  g.n_qubits = n_qubits;
  for (auto& [a, b] : edges) {
    if (a == b) {
      throw std::invalid_argument("graph edge (" + std::to_string(a) + "," +
                                  std::to_string(b) + ") is a self-loop");
    }
    if (a < 0 || b < 0 || a >= n_qubits || b >= n_qubits) {
      throw std::invalid_argument("graph edge (" + std::to_string(a) + "," +
                                  std::to_string(b) +
                                  ") references an invalid qubit");
    }
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  if (readout_error.empty()) {
    readout_error.assign(n_qubits, 0.0);
  }
  if (static_cast<int>(readout_error.size()) != n_qubits) {
    throw std::invalid_argument("readout_error list must have one entry per qubit");
  }
  for (double e : readout_error) {
    if (!(e >= 0.0 && e <= 1.0)) {
      throw std::invalid_argument("readout_error rates must lie in [0, 1]");
    }
  }
  g.readout_error = std::move(readout_error);
  build_adjacency(g);
  return g;
}

}  // namespace

bool CouplingGraph::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

CouplingGraph CouplingGraph::from_json_text(std::string_view json_text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    if (!j.contains("n_qubits") || !j.contains("edges")) {
      throw std::invalid_argument("graph JSON needs \"n_qubits\" and \"edges\"");
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw std::invalid_argument("graph edges must be [a, b] pairs");
      }
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    }
    std::vector<double> readout;
    if (j.contains("readout_error")) {
      readout = j.at("readout_error").get<std::vector<double>>();
    }
    return make_graph(j.at("n_qubits").get<int>(), std::move(edges),
                      std::move(readout));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid graph JSON: ") + e.what());
  }
}

CouplingGraph CouplingGraph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open graph file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

std::string CouplingGraph::to_json_text() const {
  nlohmann::json j;
  j["n_qubits"] = n_qubits;
  auto& je = j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : edges) {
    je.push_back({a, b});
  }
  j["readout_error"] = readout_error;
  return j.dump(2);
}

const CouplingGraph& falcon27() {
  // 27-qubit heavy-hex device map with a fixed readout calibration snapshot.
  static const CouplingGraph g = make_graph(
      27,
      {{0, 1},   {1, 2},   {1, 4},   {2, 3},   {3, 5},   {4, 7},   {5, 8},
       {6, 7},   {7, 10},  {8, 9},   {8, 11},  {10, 12}, {11, 14}, {12, 13},
       {12, 15}, {13, 14}, {14, 16}, {15, 18}, {16, 19}, {17, 18}, {18, 21},
       {19, 20}, {19, 22}, {21, 23}, {22, 25}, {23, 24}, {24, 25}, {25, 26}},
      {0.013, 0.019, 0.011, 0.026, 0.015, 0.031, 0.022, 0.009, 0.017,
       0.038, 0.012, 0.016, 0.022, 0.010, 0.014, 0.028, 0.020, 0.018,
       0.011, 0.015, 0.033, 0.024, 0.016, 0.013, 0.021, 0.017, 0.025});
  return g;
}

CouplingGraph resolve_graph(const std::string& name_or_path) {
  if (name_or_path.empty() || name_or_path == "falcon27") {
    return falcon27();
  }
  return CouplingGraph::load(name_or_path);
}

int QubitConfiguration::logical_index(int physical) const {
  const auto it = std::lower_bound(qubits.begin(), qubits.end(), physical);
  if (it == qubits.end() || *it != physical) {
    throw std::invalid_argument("qubit " + std::to_string(physical) +
                                " is not part of the configuration");
  }
  return static_cast<int>(it - qubits.begin());
}

std::string QubitConfiguration::label() const {
  std::string s;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (i > 0) s += '-';
    s += std::to_string(qubits[i]);
  }
  return s;
}

namespace {

QubitConfiguration build_config(const CouplingGraph& graph,
                                std::vector<int> qubits) {
  QubitConfiguration cfg;
  cfg.qubits = std::move(qubits);
  for (std::size_t i = 0; i < cfg.qubits.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.qubits.size(); ++j) {
      if (graph.has_edge(cfg.qubits[i], cfg.qubits[j])) {
        cfg.induced_edges.emplace_back(cfg.qubits[i], cfg.qubits[j]);
      }
    }
  }
  return cfg;
}

bool induced_connected(const QubitConfiguration& cfg) {
  if (cfg.qubits.empty()) return false;
  if (cfg.qubits.size() == 1) return true;
  // union-find over the member list
  std::vector<int> parent(cfg.qubits.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  const auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  const auto pos = [&](int q) {
    return static_cast<int>(
        std::lower_bound(cfg.qubits.begin(), cfg.qubits.end(), q) -
        cfg.qubits.begin());
  };
  for (const auto& [a, b] : cfg.induced_edges) {
    parent[find(pos(a))] = find(pos(b));
  }
  const int root = find(0);
  for (std::size_t i = 1; i < parent.size(); ++i) {
    if (find(static_cast<int>(i)) != root) return false;
  }
  return true;
}

}  // namespace

QubitConfiguration make_configuration(const CouplingGraph& graph,
                                      std::vector<int> qubits) {
  if (qubits.empty()) {
    throw std::invalid_argument("configuration must contain at least one qubit");
  }
  std::sort(qubits.begin(), qubits.end());
  if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end()) {
    throw std::invalid_argument("configuration contains duplicate qubits");
  }
  if (qubits.front() < 0 || qubits.back() >= graph.n_qubits) {
    throw std::invalid_argument("configuration references qubits outside the graph");
  }
  QubitConfiguration cfg = build_config(graph, std::move(qubits));
  if (!induced_connected(cfg)) {
    throw std::invalid_argument("configuration " + cfg.label() +
                                " is not connected on this graph");
  }
  return cfg;
}

std::vector<QubitConfiguration> enumerate_configs(const CouplingGraph& graph,
                                                  int l) {
  if (l < 1 || l > graph.n_qubits) {
    throw std::invalid_argument("configuration size must be in [1, n_qubits]");
  }
  std::vector<std::vector<int>> found;
  std::vector<int> sub;
  std::vector<char> in_sub(graph.n_qubits, 0);

  // Connected-subgraph extension (Wernicke's ESU): grow each subgraph only
  // with neighbors indexed above the anchor vertex and exclude vertices
  // already adjacent to the subgraph, so each set appears exactly once.
  const std::function<void(std::vector<int>&, int)> extend =
      [&](std::vector<int>& ext, int anchor) {
        if (static_cast<int>(sub.size()) == l) {
          std::vector<int> out = sub;
          std::sort(out.begin(), out.end());
          found.push_back(std::move(out));
          return;
        }
        while (!ext.empty()) {
          const int w = ext.back();
          ext.pop_back();
          std::vector<int> next = ext;
          for (int u : graph.adjacency[w]) {
            if (u <= anchor || in_sub[u]) continue;
            bool seen_before = false;
            for (int s : sub) {  // exclusive neighborhood check
              if (graph.has_edge(u, s)) {
                seen_before = true;
                break;
              }
            }
            if (!seen_before &&
                std::find(next.begin(), next.end(), u) == next.end()) {
              next.push_back(u);
            }
          }
          sub.push_back(w);
          in_sub[w] = 1;
          extend(next, anchor);
          in_sub[w] = 0;
          sub.pop_back();
        }
      };

  for (int v = 0; v < graph.n_qubits; ++v) {
    sub = {v};
    in_sub[v] = 1;
    std::vector<int> ext;
    for (int u : graph.adjacency[v]) {
      if (u > v) ext.push_back(u);
    }
    extend(ext, v);
    in_sub[v] = 0;
  }

  std::sort(found.begin(), found.end());
  std::vector<QubitConfiguration> configs;
  configs.reserve(found.size());
  for (auto& q : found) {
    configs.push_back(build_config(graph, std::move(q)));
  }
  return configs;
}

int select_root(const QubitConfiguration& config, const CouplingGraph& graph) {
  std::vector<int> degree(config.qubits.size(), 0);
  for (const auto& [a, b] : config.induced_edges) {
    degree[config.logical_index(a)]++;
    degree[config.logical_index(b)]++;
  }
  int best = config.qubits[0];
  int best_deg = degree[0];
  for (std::size_t i = 1; i < config.qubits.size(); ++i) {
    const int q = config.qubits[i];
    if (degree[i] > best_deg ||
        (degree[i] == best_deg &&
         graph.readout_error[q] < graph.readout_error[best])) {
      best = q;
      best_deg = degree[i];
    }
  }
  return best;
}

}  // namespace nmqc
