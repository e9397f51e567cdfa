// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef NMQC_KERNELS_HPP
#define NMQC_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace nmqc::kern {

using cdouble = std::complex<double>;

// Data-parallel inner loops shared by the statevector, Walsh-transform and
// mitigation code. Every entry has a scalar reference implementation; on
// x86-64 an AVX2 variant is selected at runtime when the CPU supports it.
// All dims are powers of two; amplitude arrays index qubit 0 as the least
// significant bit.
struct Kernels {
  // In-place Hadamard butterfly on the given qubit: (a, b) -> (a+b, a-b)/sqrt(2).
  void (*hadamard)(cdouble* amps, std::size_t dim, int qubit);
  // Multiply every amplitude whose `qubit` bit is set by -i (the inverse
  // phase gate, used to rotate a Y measurement into the computational basis).
  void (*phase_minus_i)(cdouble* amps, std::size_t dim, int qubit);
  // In-place CNOT: swap target-bit pairs on the control=1 half.
  void (*cnot)(cdouble* amps, std::size_t dim, int control, int target);
  // out[i] = |amps[i]|^2
  void (*abs_squared)(const cdouble* amps, double* out, std::size_t dim);
  // sum_i (-1)^popcount(i) * v[i]
  double (*parity_sum)(const double* v, std::size_t dim);
  // In-place Walsh-Hadamard transform, unnormalized: W[a] = sum_x (-1)^(a.x) v[x].
  void (*fwht)(std::int32_t* v, std::size_t dim);
  // Apply a real 2x2 matrix m = {m00, m01, m10, m11} along one bit axis:
  // (v[i], v[i | 1<<axis]) -> (m00*a + m01*b, m10*a + m11*b).
  void (*axis_matrix2)(double* v, std::size_t dim, int axis, const double m[4]);
};

// Kernel set picked at startup (AVX2 when available, else scalar).
const Kernels& active();
std::string_view active_name();

// Always-available reference implementations.
const Kernels& scalar();

// AVX2 set, or nullptr when not compiled in or not supported by this CPU.
// Exposed so equivalence tests can compare both paths explicitly.
const Kernels* avx2();

}  // namespace nmqc::kern

#endif  // NMQC_KERNELS_HPP
