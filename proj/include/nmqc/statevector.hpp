// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef NMQC_STATEVECTOR_HPP
#define NMQC_STATEVECTOR_HPP

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace nmqc {

// 2^24 amplitudes (256 MiB) is the default desk-scale ceiling.
inline constexpr int kDefaultQubitCapacity = 24;

// Dense state of l qubits; amplitude index has qubit 0 as the least
// significant bit. Gate application goes through the dispatched kernels.
class StateVector {
 public:
  // |0...0>
  explicit StateVector(int n_qubits, int capacity = kDefaultQubitCapacity);

  // (|0...0> + |1...1>)/sqrt(2)
  static StateVector ghz(int n_qubits, int capacity = kDefaultQubitCapacity);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const std::complex<double>> amplitudes() const { return amps_; }

  void apply_h(int qubit);
  void apply_sdg(int qubit);  // inverse phase gate, diag(1, -i)
  void apply_cnot(int control, int target);

  std::vector<double> probabilities() const;
  double norm_squared() const;

  // <state| tensor_j m_j |state> for m_j in {X, Y} given by the settings
  // string (character j = qubit j), via basis rotation and a parity sum.
  double pauli_expectation(std::string_view settings) const;

 private:
  int n_qubits_;
  std::vector<std::complex<double>> amps_;

  void check_qubit(int qubit) const;
};

}  // namespace nmqc

#endif  // NMQC_STATEVECTOR_HPP
