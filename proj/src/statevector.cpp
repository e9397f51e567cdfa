// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "nmqc/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nmqc/kernels.hpp"

namespace nmqc {

StateVector::StateVector(int n_qubits, int capacity) : n_qubits_(n_qubits) {
  if (n_qubits < 1) {
    throw std::invalid_argument("statevector needs at least one qubit");
  }
  if (n_qubits > capacity) {
    throw std::length_error("statevector of " + std::to_string(n_qubits) +
                            " qubits exceeds the capacity of " +
                            std::to_string(capacity));
  }
  amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

StateVector StateVector::ghz(int n_qubits, int capacity) {
  StateVector sv(n_qubits, capacity);
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  sv.amps_[0] = {kInvSqrt2, 0.0};
  sv.amps_[sv.dim() - 1] = {kInvSqrt2, 0.0};
  return sv;
}

void StateVector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_) {
    throw std::invalid_argument("qubit index " + std::to_string(qubit) +
                                " out of range for " +
                                std::to_string(n_qubits_) + " qubits");
  }
}

void StateVector::apply_h(int qubit) {
  check_qubit(qubit);
  kern::active().hadamard(amps_.data(), amps_.size(), qubit);
}

void StateVector::apply_sdg(int qubit) {
  check_qubit(qubit);
  kern::active().phase_minus_i(amps_.data(), amps_.size(), qubit);
}

void StateVector::apply_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) {
    throw std::invalid_argument("CNOT control and target must differ");
  }
  kern::active().cnot(amps_.data(), amps_.size(), control, target);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  kern::active().abs_squared(amps_.data(), p.data(), amps_.size());
  return p;
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

double StateVector::pauli_expectation(std::string_view settings) const {
  if (static_cast<int>(settings.size()) != n_qubits_) {
    throw std::invalid_argument("settings string has " +
                                std::to_string(settings.size()) +
                                " characters, state has " +
                                std::to_string(n_qubits_) + " qubits");
  }
  StateVector rotated(*this);
  for (int q = 0; q < n_qubits_; ++q) {
    switch (settings[q]) {
      case 'X':
        break;
      case 'Y':
        rotated.apply_sdg(q);
        break;
      default:
        throw std::invalid_argument("settings may only contain 'X' or 'Y'");
    }
    rotated.apply_h(q);
  }
  const std::vector<double> p = rotated.probabilities();
  return kern::active().parity_sum(p.data(), p.size());
}

}  // namespace nmqc
