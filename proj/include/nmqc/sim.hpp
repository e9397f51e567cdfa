// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef NMQC_SIM_HPP
#define NMQC_SIM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nmqc/circuit.hpp"
#include "nmqc/mitigation.hpp"
#include "nmqc/statevector.hpp"
#include "nmqc/topology.hpp"

namespace nmqc {

// Readout confusion per qubit plus an optional two-qubit-gate depolarizing
// rate. The depolarizing part is modeled as global white noise: the ideal
// distribution is mixed toward uniform with weight (1-p)^#CNOT, which keeps
// exact-mode evaluation deterministic and damps every parity observable by
// the same factor.
struct NoiseModel {
  std::vector<CalibrationMatrix> readout;  // empty = ideal readout
  double depolarizing_2q = 0.0;

  bool is_ideal() const { return readout.empty() && depolarizing_2q == 0.0; }
};

// Measurement outcomes of repeated shots. Keys render the outcome index
// MSB-first, i.e. qubit 0 is the rightmost character.
struct CountsTable {
  long long shots = 0;
  std::map<std::string, long long> counts;
};

std::string outcome_string(std::uint64_t index, int n_qubits);
std::uint64_t outcome_index(std::string_view outcome);

// <GHZ-or-any-state| product of X/Y |state>; settings character j addresses
// qubit j. Forwards to StateVector::pauli_expectation.
double expectation(const StateVector& state, std::string_view settings);

// Exact outcome distribution of the circuit measured in the given X/Y bases
// under the noise model, without sampling.
ProbabilityVector exact_setting_distribution(const Circuit& circuit,
                                             std::string_view settings,
                                             const NoiseModel& noise = {});

// Multinomial shot sampling from exact_setting_distribution; one seeded
// stream per call, reproducible across runs and platforms.
CountsTable sample(const Circuit& circuit, std::string_view settings,
                   long long shots, const NoiseModel& noise = {},
                   std::uint64_t seed = 0);

// Draws `shots` outcomes from an explicit distribution (inverse-CDF).
std::vector<long long> sample_histogram(const ProbabilityVector& p,
                                        long long shots, std::uint64_t seed);

CountsTable histogram_to_counts(const std::vector<long long>& hist,
                                int n_qubits, long long shots);
ProbabilityVector counts_to_probabilities(const CountsTable& counts,
                                          int n_qubits);

// Basis-state preparation/measurement under the model's readout noise, used
// to estimate calibration matrices. Gate noise does not apply (calibration
// circuits contain no two-qubit gates).
BasisSampler make_basis_sampler(int n_qubits, const NoiseModel& noise,
                                std::uint64_t seed);

}  // namespace nmqc

#endif  // NMQC_SIM_HPP
