// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef NMQC_CIRCUIT_HPP
#define NMQC_CIRCUIT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "nmqc/statevector.hpp"
#include "nmqc/topology.hpp"

namespace nmqc {

struct Gate {
  enum class Kind { H, Cnot, Sdg };
  Kind kind;
  int q0;       // target for H/Sdg, control for Cnot
  int q1 = -1;  // Cnot target
};

// Gates grouped into layers of pairwise-disjoint qubit support, i.e. each
// layer could execute simultaneously on hardware. Qubit indices are logical
// (0..n-1); `physical` maps them back to device labels when the circuit was
// scheduled on a configuration.
struct Circuit {
  int n_qubits = 0;
  std::vector<int> physical;  // empty when logical == physical
  std::vector<std::vector<Gate>> layers;

  int cnot_count() const;
  int cnot_layer_count() const;

  // Throws if any layer touches a qubit twice.
  void check_layers() const;

  // One line per layer, e.g. "L1: CX 0>1 | CX 2>3".
  std::string str() const;
};

// GHZ preparation on a connected configuration: H on the root, then the
// CNOTs of a breadth-first spanning tree (parent = control). Tree edges are
// packed into rounds where every qubit already in the entangled cluster
// fans out to at most one pending child (largest subtree first), so layers
// stay disjoint and depth stays near the tree eccentricity.
Circuit ghz_circuit(const QubitConfiguration& config, int root_physical);

// Topology-level alias for ghz_circuit.
Circuit schedule_cnots(const QubitConfiguration& config, int root_physical);

// Appends measurement-basis rotations for an {X,Y}^n settings string:
// an inverse-phase layer on the Y qubits, then a Hadamard layer on all.
Circuit with_measurement_basis(Circuit circuit, std::string_view settings);

// Executes from |0...0>.
StateVector run_circuit(const Circuit& circuit,
                        int capacity = kDefaultQubitCapacity);

}  // namespace nmqc

#endif  // NMQC_CIRCUIT_HPP
