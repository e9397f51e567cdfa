// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef NMQC_TOPOLOGY_HPP
#define NMQC_TOPOLOGY_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nmqc {

// Device connectivity plus the per-qubit readout-error snapshot.
// Edges are undirected, stored as (low, high) pairs without self-loops.
struct CouplingGraph {
  int n_qubits = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> readout_error;  // one rate per qubit, in [0, 1]
  std::vector<std::vector<int>> adjacency;

  bool has_edge(int a, int b) const;
  int degree(int q) const { return static_cast<int>(adjacency[q].size()); }

  // Schema: {"n_qubits": N, "edges": [[a,b],...], "readout_error": [...]}
  // (readout_error optional, defaults to 0).
  static CouplingGraph from_json_text(std::string_view json_text);
  static CouplingGraph load(const std::string& path);
  std::string to_json_text() const;
};

// The bundled 27-qubit heavy-hex device map with its calibration snapshot.
const CouplingGraph& falcon27();

// Resolves either a builtin graph name ("falcon27") or a JSON file path.
CouplingGraph resolve_graph(const std::string& name_or_path);

// A connected set of physical qubits on which one GHZ state is prepared.
// `qubits` is sorted ascending; its position order defines the logical
// qubit indices used by circuits and counts.
struct QubitConfiguration {
  std::vector<int> qubits;
  std::vector<std::pair<int, int>> induced_edges;

  int size() const { return static_cast<int>(qubits.size()); }
  int logical_index(int physical) const;
  std::string label() const;  // "0-1-2-4"
};

// Validates membership and connectivity; throws on a disconnected set.
QubitConfiguration make_configuration(const CouplingGraph& graph,
                                      std::vector<int> qubits);

// All connected induced subgraphs of size l, each exactly once, sorted by
// vertex set. Uses recursive extension with a forbidden set so no subgraph
// is generated twice.
std::vector<QubitConfiguration> enumerate_configs(const CouplingGraph& graph,
                                                  int l);

// The qubit the initial Hadamard acts on: maximum degree inside the
// configuration, ties broken by smaller readout error, then smaller index.
int select_root(const QubitConfiguration& config, const CouplingGraph& graph);

}  // namespace nmqc

#endif  // NMQC_TOPOLOGY_HPP
