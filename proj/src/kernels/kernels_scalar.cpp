// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "nmqc/kernels.hpp"

#include <bit>
#include <cmath>

namespace nmqc::kern {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void hadamard_scalar(cdouble* amps, std::size_t dim, int qubit) {
  const std::size_t half = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < dim; base += 2 * half) {
    for (std::size_t i = base; i < base + half; ++i) {
      const cdouble a = amps[i];
      const cdouble b = amps[i + half];
      amps[i] = (a + b) * kInvSqrt2;
      amps[i + half] = (a - b) * kInvSqrt2;
    }
  }
}

void phase_minus_i_scalar(cdouble* amps, std::size_t dim, int qubit) {
  const std::size_t half = std::size_t{1} << qubit;
  for (std::size_t base = half; base < dim; base += 2 * half) {
    for (std::size_t i = base; i < base + half; ++i) {
      const cdouble a = amps[i];
      amps[i] = cdouble(a.imag(), -a.real());
    }
  }
}

void cnot_scalar(cdouble* amps, std::size_t dim, int control, int target) {
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & cbit) && !(i & tbit)) {
      const cdouble tmp = amps[i];
      amps[i] = amps[i | tbit];
      amps[i | tbit] = tmp;
    }
  }
}

void abs_squared_scalar(const cdouble* amps, double* out, std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) {
    out[i] = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
  }
}

double parity_sum_scalar(const double* v, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    acc += (std::popcount(i) & 1) ? -v[i] : v[i];
  }
  return acc;
}

void fwht_scalar(std::int32_t* v, std::size_t dim) {
  for (std::size_t half = 1; half < dim; half <<= 1) {
    for (std::size_t base = 0; base < dim; base += 2 * half) {
      for (std::size_t i = base; i < base + half; ++i) {
        const std::int32_t a = v[i];
        const std::int32_t b = v[i + half];
        v[i] = a + b;
        v[i + half] = a - b;
      }
    }
  }
}

void axis_matrix2_scalar(double* v, std::size_t dim, int axis, const double m[4]) {
  const std::size_t half = std::size_t{1} << axis;
  for (std::size_t base = 0; base < dim; base += 2 * half) {
    for (std::size_t i = base; i < base + half; ++i) {
      const double a = v[i];
      const double b = v[i + half];
      v[i] = m[0] * a + m[1] * b;
      v[i + half] = m[2] * a + m[3] * b;
    }
  }
}

}  // namespace

const Kernels& scalar() {
  static const Kernels k = {
      hadamard_scalar,    phase_minus_i_scalar, cnot_scalar,
      abs_squared_scalar, parity_sum_scalar,    fwht_scalar,
      axis_matrix2_scalar,
  };
  return k;
}

}  // namespace nmqc::kern
