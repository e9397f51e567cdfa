// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "nmqc/circuit.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace nmqc {

int Circuit::cnot_count() const {
  int n = 0;
  for (const auto& layer : layers) {
    for (const auto& g : layer) {
      if (g.kind == Gate::Kind::Cnot) ++n;
    }
  }
  return n;
}

int Circuit::cnot_layer_count() const {
  int n = 0;
  for (const auto& layer : layers) {
    if (!layer.empty() && layer.front().kind == Gate::Kind::Cnot) ++n;
  }
  return n;
}

void Circuit::check_layers() const {
  for (std::size_t li = 0; li < layers.size(); ++li) {
    std::vector<char> used(n_qubits, 0);
    for (const Gate& g : layers[li]) {
      const auto touch = [&](int q) {
        if (q < 0 || q >= n_qubits) {
          throw std::invalid_argument("gate qubit out of range in layer " +
                                      std::to_string(li));
        }
        if (used[q]) {
          throw std::invalid_argument("layer " + std::to_string(li) +
                                      " touches qubit " + std::to_string(q) +
                                      " twice");
        }
        used[q] = 1;
      };
      touch(g.q0);
      if (g.kind == Gate::Kind::Cnot) touch(g.q1);
    }
  }
}

std::string Circuit::str() const {
  std::string out;
  for (std::size_t li = 0; li < layers.size(); ++li) {
    out += "L" + std::to_string(li) + ":";
    bool first = true;
    for (const Gate& g : layers[li]) {
      out += first ? " " : " | ";
      first = false;
      switch (g.kind) {
        case Gate::Kind::H:
          out += "H " + std::to_string(g.q0);
          break;
        case Gate::Kind::Sdg:
          out += "SDG " + std::to_string(g.q0);
          break;
        case Gate::Kind::Cnot:
          out += "CX " + std::to_string(g.q0) + ">" + std::to_string(g.q1);
          break;
      }
    }
    out += "\n";
  }
  return out;
}

Circuit ghz_circuit(const QubitConfiguration& config, int root_physical) {
  const int l = config.size();
  if (l > 1 && config.induced_edges.empty()) {
    throw std::invalid_argument("configuration " + config.label() +
                                " has no internal couplings");
  }
  const int root = config.logical_index(root_physical);

  std::vector<std::vector<int>> adj(l);
  for (const auto& [a, b] : config.induced_edges) {
    const int la = config.logical_index(a);
    const int lb = config.logical_index(b);
    adj[la].push_back(lb);
    adj[lb].push_back(la);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

  // Breadth-first spanning tree, neighbors visited in ascending order.
  std::vector<int> parent(l, -1);
  std::vector<std::vector<int>> children(l);
  std::vector<char> seen(l, 0);
  std::vector<int> order;
  std::deque<int> queue{root};
  seen[root] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        parent[u] = v;
        children[v].push_back(u);
        queue.push_back(u);
      }
    }
  }
  if (static_cast<int>(order.size()) != l) {
    throw std::invalid_argument("configuration " + config.label() +
                                " is not connected");
  }

  // Subtree sizes decide fan-out order: sending the heaviest branch first
  // keeps the longest chain running while the parent serves its other
  // children in later rounds.
  std::vector<int> subtree(l, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (parent[*it] >= 0) subtree[parent[*it]] += subtree[*it];
  }
  for (auto& ch : children) {
    std::stable_sort(ch.begin(), ch.end(),
                     [&](int a, int b) { return subtree[a] > subtree[b]; });
  }

  Circuit circ;
  circ.n_qubits = l;
  circ.physical = config.qubits;
  circ.layers.push_back({Gate{Gate::Kind::H, root}});

  std::vector<std::size_t> next_child(l, 0);
  std::vector<int> cluster{root};
  while (static_cast<int>(cluster.size()) < l) {
    std::vector<Gate> round;
    std::vector<int> joined;
    for (int v : cluster) {
      if (next_child[v] < children[v].size()) {
        const int c = children[v][next_child[v]++];
        round.push_back(Gate{Gate::Kind::Cnot, v, c});
        joined.push_back(c);
      }
    }
    circ.layers.push_back(std::move(round));
    cluster.insert(cluster.end(), joined.begin(), joined.end());
  }
  return circ;
}

Circuit schedule_cnots(const QubitConfiguration& config, int root_physical) {
  return ghz_circuit(config, root_physical);
}

Circuit with_measurement_basis(Circuit circuit, std::string_view settings) {
  if (static_cast<int>(settings.size()) != circuit.n_qubits) {
    throw std::invalid_argument("settings string length " +
                                std::to_string(settings.size()) +
                                " does not match circuit width " +
                                std::to_string(circuit.n_qubits));
  }
  std::vector<Gate> sdg_layer;
  std::vector<Gate> h_layer;
  for (int q = 0; q < circuit.n_qubits; ++q) {
    if (settings[q] == 'Y') {
      sdg_layer.push_back(Gate{Gate::Kind::Sdg, q});
    } else if (settings[q] != 'X') {
      throw std::invalid_argument("settings may only contain 'X' or 'Y'");
    }
    h_layer.push_back(Gate{Gate::Kind::H, q});
  }
  if (!sdg_layer.empty()) {
    circuit.layers.push_back(std::move(sdg_layer));
  }
  circuit.layers.push_back(std::move(h_layer));
  return circuit;
}

StateVector run_circuit(const Circuit& circuit, int capacity) {
  StateVector sv(circuit.n_qubits, capacity);
  for (const auto& layer : circuit.layers) {
    for (const Gate& g : layer) {
      switch (g.kind) {
        case Gate::Kind::H:
          sv.apply_h(g.q0);
          break;
        case Gate::Kind::Sdg:
          sv.apply_sdg(g.q0);
          break;
        case Gate::Kind::Cnot:
          sv.apply_cnot(g.q0, g.q1);
          break;
      }
    }
  }
  return sv;
}

}  // namespace nmqc
