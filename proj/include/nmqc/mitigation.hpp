// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef NMQC_MITIGATION_HPP
#define NMQC_MITIGATION_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace nmqc {

// Distribution over n-qubit outcomes, indexed with qubit 0 as the least
// significant index bit. Entries >= 0 and sum to 1 (within 1e-9 after
// projection).
using ProbabilityVector = std::vector<double>;

// Single-qubit readout confusion: entry (measured, prepared) = p(x|y).
// Columns sum to 1.
struct CalibrationMatrix {
  double entries[2][2] = {{1.0, 0.0}, {0.0, 1.0}};

  double p(int measured, int prepared) const {
    return entries[measured][prepared];
  }

  // Symmetric flip model: p(1|0) = p(0|1) = eps.
  static CalibrationMatrix symmetric(double eps);
  static CalibrationMatrix from_rates(double p1_given_0, double p0_given_1);

  double determinant() const;
  double condition_number() const;  // 2-norm, inf when singular
  void validate() const;
};

// Full 2^n x 2^n column-stochastic confusion matrix, row-major:
// entries[measured * dim + prepared].
struct GlobalCalibration {
  int n_qubits = 0;
  std::vector<double> entries;

  std::size_t dim() const { return std::size_t{1} << n_qubits; }
  void validate() const;
};

// Prepares the given computational basis state under the noise model in
// effect and returns the outcome histogram (2^n counts) for `shots` shots.
using BasisSampler =
    std::function<std::vector<long long>(std::uint64_t prepared, long long shots)>;

// Euclidean projection onto {p >= 0, sum p = 1} by sort-and-threshold.
// Throws on non-finite input.
ProbabilityVector project_simplex(const std::vector<double>& v);

// Forward readout-noise map p' = (tensor_i A_i) p, applied axis by axis.
ProbabilityVector apply_local_readout(
    const ProbabilityVector& p, std::span<const CalibrationMatrix> calibrations);

// Local readout-error mitigation: applies each A_i^{-1} along its qubit axis
// (tensor-structured solve, never materializing the 2^n x 2^n inverse) and
// projects back onto the simplex when the result leaves it. Throws when a
// calibration matrix is singular.
ProbabilityVector qrem_correct(const ProbabilityVector& p_noisy,
                               std::span<const CalibrationMatrix> calibrations);

// Estimates per-qubit confusion matrices from two calibration circuits
// (all-zeros and all-ones preparations); all qubits are read out in parallel.
std::vector<CalibrationMatrix> build_local_calibrations(
    const BasisSampler& sampler, int n_qubits, long long shots);

// Estimates the full matrix column by column from all 2^n basis states.
GlobalCalibration build_global_calibration(const BasisSampler& sampler,
                                           int n_qubits, long long shots);

// Exact global matrix of an independent local model (tensor product).
GlobalCalibration kron_calibration(std::span<const CalibrationMatrix> calibrations);

// Global measurement-error mitigation: solves A p = p_noisy (LU with partial
// pivoting), warns on stderr above condition number 1e6, then projects onto
// the simplex.
ProbabilityVector mem_correct(const ProbabilityVector& p_noisy,
                              const GlobalCalibration& calibration);

struct MemSolverImpl;

// Factors the calibration matrix once so a sweep can correct many
// distributions against the same snapshot.
class MemSolver {
 public:
  explicit MemSolver(const GlobalCalibration& calibration);
  ProbabilityVector correct(const ProbabilityVector& p_noisy) const;

 private:
  std::size_t dim_;
  std::shared_ptr<const MemSolverImpl> impl_;
};

}  // namespace nmqc

#endif  // NMQC_MITIGATION_HPP
