// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "nmqc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nmqc/rng.hpp"

namespace nmqc {

std::string outcome_string(std::uint64_t index, int n_qubits) {
  std::string s(n_qubits, '0');
  for (int q = 0; q < n_qubits; ++q) {
    if ((index >> q) & 1) s[n_qubits - 1 - q] = '1';
  }
  return s;
}

std::uint64_t outcome_index(std::string_view outcome) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    const char c = outcome[i];
    if (c != '0' && c != '1') {
      throw std::invalid_argument("outcome strings may only contain '0'/'1'");
    }
    if (c == '1') idx |= std::uint64_t{1} << (outcome.size() - 1 - i);
  }
  return idx;
}

double expectation(const StateVector& state, std::string_view settings) {
  return state.pauli_expectation(settings);
}

ProbabilityVector exact_setting_distribution(const Circuit& circuit,
                                             std::string_view settings,
                                             const NoiseModel& noise) {
  const StateVector sv = run_circuit(with_measurement_basis(circuit, settings));
  ProbabilityVector p = sv.probabilities();
  if (noise.depolarizing_2q != 0.0) {
    if (noise.depolarizing_2q < 0.0 || noise.depolarizing_2q >= 1.0) {
      throw std::invalid_argument("depolarizing_2q must lie in [0, 1)");
    }
    const double keep =
        std::pow(1.0 - noise.depolarizing_2q, circuit.cnot_count());
    const double floor = (1.0 - keep) / static_cast<double>(p.size());
    for (double& x : p) x = keep * x + floor;
  }
  if (!noise.readout.empty()) {
    p = apply_local_readout(p, noise.readout);
  }
  return p;
}

std::vector<long long> sample_histogram(const ProbabilityVector& p,
                                        long long shots, std::uint64_t seed) {
  if (shots < 1) {
    throw std::invalid_argument("sampling needs shots >= 1");
  }
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;  // guard against prefix-sum drift
  Rng rng(seed);
  std::vector<long long> hist(p.size(), 0);
  for (long long s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    const std::size_t idx =
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    hist[std::min(idx, hist.size() - 1)]++;
  }
  return hist;
}

CountsTable histogram_to_counts(const std::vector<long long>& hist,
                                int n_qubits, long long shots) {
  CountsTable t;
  t.shots = shots;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    if (hist[i] > 0) {
      t.counts[outcome_string(i, n_qubits)] = hist[i];
    }
  }
  return t;
}

ProbabilityVector counts_to_probabilities(const CountsTable& counts,
                                          int n_qubits) {
  if (counts.shots < 1) {
    throw std::invalid_argument("counts table is empty");
  }
  ProbabilityVector p(std::size_t{1} << n_qubits, 0.0);
  for (const auto& [outcome, c] : counts.counts) {
    if (static_cast<int>(outcome.size()) != n_qubits) {
      throw std::invalid_argument("outcome '" + outcome + "' has wrong width");
    }
    p[outcome_index(outcome)] +=
        static_cast<double>(c) / static_cast<double>(counts.shots);
  }
  return p;
}

CountsTable sample(const Circuit& circuit, std::string_view settings,
                   long long shots, const NoiseModel& noise,
                   std::uint64_t seed) {
  const ProbabilityVector p = exact_setting_distribution(circuit, settings, noise);
  const std::vector<long long> hist = sample_histogram(p, shots, seed);
  return histogram_to_counts(hist, circuit.n_qubits, shots);
}

BasisSampler make_basis_sampler(int n_qubits, const NoiseModel& noise,
                                std::uint64_t seed) {
  if (!noise.readout.empty() &&
      static_cast<int>(noise.readout.size()) != n_qubits) {
    throw std::invalid_argument("noise model width does not match qubit count");
  }
  return [n_qubits, noise, seed](std::uint64_t prepared, long long shots) {
    ProbabilityVector p(std::size_t{1} << n_qubits, 0.0);
    p.at(prepared) = 1.0;
    if (!noise.readout.empty()) {
      p = apply_local_readout(p, noise.readout);
    }
    return sample_histogram(p, shots, derive_seed(seed, prepared));
  };
}

}  // namespace nmqc
