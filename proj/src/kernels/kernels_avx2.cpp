// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

// AVX2 variants of the inner loops. Compiled with -mavx2 -mfma; only ever
// called after the runtime CPU check in dispatch.cpp. Complex amplitudes are
// interleaved (re, im) doubles, so a 256-bit lane holds two amplitudes; the
// qubit-0 cases, where pairs are not contiguous, shuffle within the lane.

#include "nmqc/kernels.hpp"

#if defined(NMQC_HAVE_AVX2)

#include <immintrin.h>

#include <bit>

namespace nmqc::kern {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void hadamard_avx2(cdouble* amps, std::size_t dim, int qubit) {
  double* d = reinterpret_cast<double*>(amps);
  const __m256d s = _mm256_set1_pd(kInvSqrt2);
  if (qubit == 0) {
    // x = [re0 im0 re1 im1]; pair partner sits in the other 128-bit half.
    for (std::size_t i = 0; i + 1 < dim; i += 2) {
      const __m256d x = _mm256_loadu_pd(d + 2 * i);
      const __m256d xs = _mm256_permute2f128_pd(x, x, 0x01);
      const __m256d sum = _mm256_add_pd(x, xs);
      const __m256d diff = _mm256_sub_pd(xs, x);  // lanes 2,3 hold a-b
      const __m256d y = _mm256_blend_pd(sum, diff, 0b1100);
      _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(y, s));
    }
    return;
  }
  const std::size_t half = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < dim; base += 2 * half) {
    for (std::size_t i = base; i < base + half; i += 2) {
      double* pa = d + 2 * i;
      double* pb = d + 2 * (i + half);
      const __m256d a = _mm256_loadu_pd(pa);
      const __m256d b = _mm256_loadu_pd(pb);
      _mm256_storeu_pd(pa, _mm256_mul_pd(_mm256_add_pd(a, b), s));
      _mm256_storeu_pd(pb, _mm256_mul_pd(_mm256_sub_pd(a, b), s));
    }
  }
}

void phase_minus_i_avx2(cdouble* amps, std::size_t dim, int qubit) {
  double* d = reinterpret_cast<double*>(amps);
  // (re, im) -> (im, -re): swap within each complex, negate the new imag.
  const __m256d neg_im = _mm256_castsi256_pd(
      _mm256_set_epi64x(INT64_C(0x8000000000000000), 0,
                        INT64_C(0x8000000000000000), 0));
  if (qubit == 0) {
    for (std::size_t i = 0; i + 1 < dim; i += 2) {
      const __m256d x = _mm256_loadu_pd(d + 2 * i);
      const __m256d rot = _mm256_xor_pd(_mm256_permute_pd(x, 0b0101), neg_im);
      _mm256_storeu_pd(d + 2 * i, _mm256_blend_pd(x, rot, 0b1100));
    }
    return;
  }
  const std::size_t half = std::size_t{1} << qubit;
  for (std::size_t base = half; base < dim; base += 2 * half) {
    for (std::size_t i = base; i < base + half; i += 2) {
      const __m256d x = _mm256_loadu_pd(d + 2 * i);
      const __m256d rot = _mm256_xor_pd(_mm256_permute_pd(x, 0b0101), neg_im);
      _mm256_storeu_pd(d + 2 * i, rot);
    }
  }
}

void cnot_avx2(cdouble* amps, std::size_t dim, int control, int target) {
  // Pure permutation, memory bound; the scalar pair swap is already at
  // bandwidth, so reuse it rather than duplicating shuffle logic.
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

void abs_squared_avx2(const cdouble* amps, double* out, std::size_t dim) {
  const double* d = reinterpret_cast<const double*>(amps);
  std::size_t i = 0;
  for (; i + 2 <= dim; i += 2) {
    const __m256d x = _mm256_loadu_pd(d + 2 * i);  // re0 im0 re1 im1
    const __m256d sq = _mm256_mul_pd(x, x);
    const __m256d sw = _mm256_permute_pd(sq, 0b0101);
    const __m256d sum = _mm256_add_pd(sq, sw);  // |a0|^2 |a0|^2 |a1|^2 |a1|^2
    const __m128d lo = _mm256_castpd256_pd128(sum);
    const __m128d hi = _mm256_extractf128_pd(sum, 1);
    _mm_storeu_pd(out + i, _mm_unpacklo_pd(lo, hi));
  }
  for (; i < dim; ++i) {
    out[i] = amps[i].real() * amps[i].real() + amps[i].imag() * amps[i].imag();
  }
}

double parity_sum_avx2(const double* v, std::size_t dim) {
  if (dim < 4) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      acc += (std::popcount(i) & 1) ? -v[i] : v[i];
    }
    return acc;
  }
  // Within a 4-block the parity pattern is (+,-,-,+) times the block sign.
  const __m256d inner = _mm256_set_pd(1.0, -1.0, -1.0, 1.0);
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < dim; i += 4) {
    const double sign = (std::popcount(i >> 2) & 1) ? -1.0 : 1.0;
    const __m256d w = _mm256_mul_pd(inner, _mm256_set1_pd(sign));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(v + i), w, acc);
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d s2 = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s2, _mm_unpackhi_pd(s2, s2)));
}

void fwht_avx2(std::int32_t* v, std::size_t dim) {
  std::size_t half = 1;
  // Strides below one vector width stay scalar.
  for (; half < dim && half < 8; half <<= 1) {
    for (std::size_t base = 0; base < dim; base += 2 * half) {
      for (std::size_t i = base; i < base + half; ++i) {
        const std::int32_t a = v[i];
        const std::int32_t b = v[i + half];
        v[i] = a + b;
        v[i + half] = a - b;
      }
    }
  }
  for (; half < dim; half <<= 1) {
    for (std::size_t base = 0; base < dim; base += 2 * half) {
      for (std::size_t i = base; i < base + half; i += 8) {
        __m256i* pa = reinterpret_cast<__m256i*>(v + i);
        __m256i* pb = reinterpret_cast<__m256i*>(v + i + half);
        const __m256i a = _mm256_loadu_si256(pa);
        const __m256i b = _mm256_loadu_si256(pb);
        _mm256_storeu_si256(pa, _mm256_add_epi32(a, b));
        _mm256_storeu_si256(pb, _mm256_sub_epi32(a, b));
      }
    }
  }
}

void axis_matrix2_avx2(double* v, std::size_t dim, int axis, const double m[4]) {
  const std::size_t half = std::size_t{1} << axis;
  if (half < 4) {
    for (std::size_t base = 0; base < dim; base += 2 * half) {
      for (std::size_t i = base; i < base + half; ++i) {
        const double a = v[i];
        const double b = v[i + half];
        v[i] = m[0] * a + m[1] * b;
        v[i + half] = m[2] * a + m[3] * b;
      }
    }
    return;
  }
  const __m256d m00 = _mm256_set1_pd(m[0]);
  const __m256d m01 = _mm256_set1_pd(m[1]);
  const __m256d m10 = _mm256_set1_pd(m[2]);
  const __m256d m11 = _mm256_set1_pd(m[3]);
  for (std::size_t base = 0; base < dim; base += 2 * half) {
    for (std::size_t i = base; i < base + half; i += 4) {
      const __m256d a = _mm256_loadu_pd(v + i);
      const __m256d b = _mm256_loadu_pd(v + i + half);
      _mm256_storeu_pd(v + i, _mm256_fmadd_pd(m00, a, _mm256_mul_pd(m01, b)));
      _mm256_storeu_pd(v + i + half,
                       _mm256_fmadd_pd(m10, a, _mm256_mul_pd(m11, b)));
    }
  }
}

}  // namespace

const Kernels* avx2_impl() {
  static const Kernels k = {
      hadamard_avx2,    phase_minus_i_avx2, cnot_avx2, abs_squared_avx2,
      parity_sum_avx2,  fwht_avx2,          axis_matrix2_avx2,
  };
  return &k;
}

}  // namespace nmqc::kern

#endif  // NMQC_HAVE_AVX2
