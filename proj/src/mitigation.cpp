// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "nmqc/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "nmqc/kernels.hpp"

namespace nmqc {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_size(std::size_t n, const char* what) {
  if (!is_power_of_two(n)) {
    throw std::invalid_argument(std::string(what) +
                                " length must be a power of two");
  }
  int l = 0;
  while ((std::size_t{1} << l) < n) ++l;
  return l;
}

// Projects only when the solve left the simplex; tiny drift is renormalized.
ProbabilityVector finish_correction(std::vector<double> v) {
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  const double min = *std::min_element(v.begin(), v.end());
  if (min < 0.0 || std::abs(sum - 1.0) > 1e-12) {
    return project_simplex(v);
  }
  for (double& x : v) x /= sum;
  return v;
}

// Dense LU with partial pivoting, row-major. Enough for the 2^n x 2^n
// calibration sizes MEM works at; no external solver needed.
struct LuFactor {
  std::size_t n = 0;
  std::vector<double> lu;   // combined L (unit diagonal) and U
  std::vector<int> perm;    // row i of PA is row perm[i] of A
  bool singular = false;

  explicit LuFactor(const std::vector<double>& a, std::size_t n_) : n(n_), lu(a) {
    perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      double best = std::abs(lu[col * n + col]);
      for (std::size_t r = col + 1; r < n; ++r) {
        const double v = std::abs(lu[r * n + col]);
        if (v > best) {
          best = v;
          pivot = r;
        }
      }
      if (best < 1e-300) {
        singular = true;
        return;
      }
      if (pivot != col) {
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(lu[col * n + j], lu[pivot * n + j]);
        }
        std::swap(perm[col], perm[pivot]);
      }
      const double d = lu[col * n + col];
      for (std::size_t r = col + 1; r < n; ++r) {
        const double f = lu[r * n + col] / d;
        lu[r * n + col] = f;
        for (std::size_t j = col + 1; j < n; ++j) {
          lu[r * n + j] -= f * lu[col * n + j];
        }
      }
    }
  }

  // x = A^{-1} b
  std::vector<double> solve(const std::vector<double>& b) const {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
    for (std::size_t i = 1; i < n; ++i) {
      double s = x[i];
      for (std::size_t j = 0; j < i; ++j) s -= lu[i * n + j] * x[j];
      x[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = x[ii];
      for (std::size_t j = ii + 1; j < n; ++j) s -= lu[ii * n + j] * x[j];
      x[ii] = s / lu[ii * n + ii];
    }
    return x;
  }

  // x = A^{-T} b, using A^T = U^T L^T P
  std::vector<double> solve_transposed(const std::vector<double>& b) const {
    std::vector<double> w(b);
    for (std::size_t i = 0; i < n; ++i) {
      double s = w[i];
      for (std::size_t j = 0; j < i; ++j) s -= lu[j * n + i] * w[j];
      w[i] = s / lu[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = w[ii];
      for (std::size_t j = ii + 1; j < n; ++j) s -= lu[j * n + ii] * w[j];
      w[ii] = s;
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[perm[i]] = w[i];
    return x;
  }
};

double one_norm(const std::vector<double>& a, std::size_t n) {
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i * n + j]);
    best = std::max(best, s);
  }
  return best;
}

// Hager's estimator for ||A^{-1}||_1 (a handful of solves).
double inverse_one_norm_estimate(const LuFactor& f) {
  const std::size_t n = f.n;
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  double estimate = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    const std::vector<double> y = f.solve(x);
    double y1 = 0.0;
    for (double v : y) y1 += std::abs(v);
    estimate = std::max(estimate, y1);
    std::vector<double> xi(n);
    for (std::size_t i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    const std::vector<double> z = f.solve_transposed(xi);
    std::size_t jmax = 0;
    double zmax = 0.0;
    double zx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      zx += z[i] * x[i];
      if (std::abs(z[i]) > zmax) {
        zmax = std::abs(z[i]);
        jmax = i;
      }
    }
    if (zmax <= zx + 1e-15) break;
    std::fill(x.begin(), x.end(), 0.0);
    x[jmax] = 1.0;
  }
  return estimate;
}

}  // namespace

CalibrationMatrix CalibrationMatrix::symmetric(double eps) {
  return from_rates(eps, eps);
}

CalibrationMatrix CalibrationMatrix::from_rates(double p1_given_0,
                                                double p0_given_1) {
  CalibrationMatrix a;
  a.entries[0][0] = 1.0 - p1_given_0;
  a.entries[1][0] = p1_given_0;
  a.entries[0][1] = p0_given_1;
  a.entries[1][1] = 1.0 - p0_given_1;
  a.validate();
  return a;
}

double CalibrationMatrix::determinant() const {
  return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
}

double CalibrationMatrix::condition_number() const {
  // Closed-form 2x2 singular values.
  const double a = entries[0][0], b = entries[0][1];
  const double c = entries[1][0], d = entries[1][1];
  const double s = a * a + b * b + c * c + d * d;
  const double det = determinant();
  const double disc = std::sqrt(std::max(0.0, s * s - 4.0 * det * det));
  const double smax = std::sqrt((s + disc) / 2.0);
  const double smin2 = (s - disc) / 2.0;
  if (smin2 <= 0.0) return std::numeric_limits<double>::infinity();
  return smax / std::sqrt(smin2);
}

void CalibrationMatrix::validate() const {
  for (int col = 0; col < 2; ++col) {
    const double sum = entries[0][col] + entries[1][col];
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("calibration matrix column " +
                                  std::to_string(col) + " sums to " +
                                  std::to_string(sum) + ", expected 1");
    }
    for (int row = 0; row < 2; ++row) {
      if (!(entries[row][col] >= -1e-12 && entries[row][col] <= 1.0 + 1e-12)) {
        throw std::invalid_argument("calibration matrix entries must lie in [0, 1]");
      }
    }
  }
}

void GlobalCalibration::validate() const {
  const std::size_t d = dim();
  if (entries.size() != d * d) {
    throw std::invalid_argument("global calibration matrix has wrong shape");
  }
  for (std::size_t col = 0; col < d; ++col) {
    double sum = 0.0;
    for (std::size_t row = 0; row < d; ++row) sum += entries[row * d + col];
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("global calibration column " +
                                  std::to_string(col) + " sums to " +
                                  std::to_string(sum) + ", expected 1");
    }
  }
}

ProbabilityVector project_simplex(const std::vector<double>& v) {
  if (v.empty()) {
    throw std::invalid_argument("cannot project an empty vector");
  }
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument("cannot project a vector with non-finite entries");
    }
  }
  std::vector<double> sorted(v);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) {
      tau = candidate;
    }
  }
  ProbabilityVector out(v.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::max(v[i] - tau, 0.0);
    sum += out[i];
  }
  for (double& x : out) x /= sum;  // removes ~1e-15 threshold drift
  return out;
}

ProbabilityVector apply_local_readout(
    const ProbabilityVector& p, std::span<const CalibrationMatrix> calibrations) {
  const int n = log2_size(p.size(), "probability vector");
  if (static_cast<int>(calibrations.size()) != n) {
    throw std::invalid_argument("need one calibration matrix per qubit");
  }
  std::vector<double> out(p);
  for (int q = 0; q < n; ++q) {
    calibrations[q].validate();
    const double m[4] = {calibrations[q].entries[0][0], calibrations[q].entries[0][1],
                         calibrations[q].entries[1][0], calibrations[q].entries[1][1]};
    kern::active().axis_matrix2(out.data(), out.size(), q, m);
  }
  return out;
}

ProbabilityVector qrem_correct(const ProbabilityVector& p_noisy,
                               std::span<const CalibrationMatrix> calibrations) {
  const int n = log2_size(p_noisy.size(), "probability vector");
  if (static_cast<int>(calibrations.size()) != n) {
    throw std::invalid_argument("need one calibration matrix per qubit");
  }
  std::vector<double> out(p_noisy);
  for (int q = 0; q < n; ++q) {
    const CalibrationMatrix& a = calibrations[q];
    a.validate();
    const double det = a.determinant();
    if (std::abs(det) < 1e-12) {
      throw std::runtime_error(
          "calibration matrix for qubit " + std::to_string(q) +
          " is singular (condition number " +
          std::to_string(a.condition_number()) + ")");
    }
    const double inv[4] = {a.entries[1][1] / det, -a.entries[0][1] / det,
                           -a.entries[1][0] / det, a.entries[0][0] / det};
    kern::active().axis_matrix2(out.data(), out.size(), q, inv);
  }
  return finish_correction(std::move(out));
}

std::vector<CalibrationMatrix> build_local_calibrations(
    const BasisSampler& sampler, int n_qubits, long long shots) {
  if (shots < 1) {
    throw std::invalid_argument("calibration needs shots >= 1");
  }
  const std::uint64_t all_ones = (std::uint64_t{1} << n_qubits) - 1;
  const std::vector<long long> zeros = sampler(0, shots);
  const std::vector<long long> ones = sampler(all_ones, shots);
  std::vector<CalibrationMatrix> out;
  out.reserve(n_qubits);
  for (int q = 0; q < n_qubits; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    long long flipped0 = 0;
    long long flipped1 = 0;
    for (std::size_t m = 0; m < zeros.size(); ++m) {
      if (m & bit) flipped0 += zeros[m];
      else flipped1 += ones[m];
    }
    out.push_back(CalibrationMatrix::from_rates(
        static_cast<double>(flipped0) / static_cast<double>(shots),
        static_cast<double>(flipped1) / static_cast<double>(shots)));
  }
  return out;
}

GlobalCalibration build_global_calibration(const BasisSampler& sampler,
                                           int n_qubits, long long shots) {
  if (shots < 1) {
    throw std::invalid_argument("calibration needs shots >= 1");
  }
  if (n_qubits > 12) {
    throw std::length_error("global calibration is capped at 12 qubits (2^n circuits)");
  }
  GlobalCalibration g;
  g.n_qubits = n_qubits;
  const std::size_t d = g.dim();
  g.entries.assign(d * d, 0.0);
  for (std::size_t prepared = 0; prepared < d; ++prepared) {
    const std::vector<long long> hist = sampler(prepared, shots);
    for (std::size_t measured = 0; measured < d; ++measured) {
      g.entries[measured * d + prepared] =
          static_cast<double>(hist[measured]) / static_cast<double>(shots);
    }
  }
  return g;
}

GlobalCalibration kron_calibration(std::span<const CalibrationMatrix> calibrations) {
  GlobalCalibration g;
  g.n_qubits = static_cast<int>(calibrations.size());
  if (g.n_qubits > 12) {
    throw std::length_error("global calibration is capped at 12 qubits");
  }
  const std::size_t d = g.dim();
  g.entries.resize(d * d);
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t y = 0; y < d; ++y) {
      double v = 1.0;
      for (int q = 0; q < g.n_qubits; ++q) {
        v *= calibrations[q].p((x >> q) & 1, (y >> q) & 1);
      }
      g.entries[x * d + y] = v;
    }
  }
  return g;
}

struct MemSolverImpl {
  LuFactor lu;
  explicit MemSolverImpl(const GlobalCalibration& c) : lu(c.entries, c.dim()) {}
};

MemSolver::MemSolver(const GlobalCalibration& calibration)
    : dim_(calibration.dim()),
      impl_(std::make_shared<const MemSolverImpl>(calibration)) {
  if (impl_->lu.singular) {
    throw std::runtime_error("global calibration matrix is singular");
  }
  const double cond =
      one_norm(calibration.entries, dim_) * inverse_one_norm_estimate(impl_->lu);
  if (cond > 1e6) {
    std::cerr << "warning: global calibration condition number ~" << cond
              << "; mitigated values may be unreliable\n";
  }
}

ProbabilityVector MemSolver::correct(const ProbabilityVector& p_noisy) const {
  if (p_noisy.size() != dim_) {
    throw std::invalid_argument("probability vector and calibration dimensions differ");
  }
  return finish_correction(impl_->lu.solve(p_noisy));
}

ProbabilityVector mem_correct(const ProbabilityVector& p_noisy,
                              const GlobalCalibration& calibration) {
  return MemSolver(calibration).correct(p_noisy);
}

}  // namespace nmqc
