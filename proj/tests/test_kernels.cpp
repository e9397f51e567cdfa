// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "nmqc/kernels.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "nmqc/rng.hpp"

using namespace nmqc;

namespace {

std::vector<kern::cdouble> random_state(int n_qubits, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<kern::cdouble> amps(std::size_t{1} << n_qubits);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {rng.uniform() - 0.5, rng.uniform() - 0.5};
    norm += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& a : amps) a *= scale;
  return amps;
}

std::vector<double> random_reals(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform() - 0.25;
  return v;
}

void check_close(const std::vector<kern::cdouble>& a,
                 const std::vector<kern::cdouble>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i] - b[i]) < 1e-12);
  }
}

}  // namespace

TEST_CASE("dispatch selects a kernel set") {
  CHECK((kern::active_name() == "avx2" || kern::active_name() == "scalar"));
  // On machines without AVX2 the pointer is null and dispatch falls back.
  if (kern::avx2() == nullptr) {
    CHECK(kern::active_name() == "scalar");
  }
}

TEST_CASE("avx2 kernels match scalar reference") {
  const kern::Kernels* vec = kern::avx2();
  if (vec == nullptr) {
    return;  // nothing to compare on this host
  }
  const kern::Kernels& ref = kern::scalar();

  for (int n : {1, 2, 3, 5, 7}) {
    const std::size_t dim = std::size_t{1} << n;
    for (int q = 0; q < n; ++q) {
      CAPTURE(n);
      CAPTURE(q);

      auto a = random_state(n, 11 * n + q);
      auto b = a;
      ref.hadamard(a.data(), dim, q);
      vec->hadamard(b.data(), dim, q);
      check_close(a, b);

      a = random_state(n, 23 * n + q);
      b = a;
      ref.phase_minus_i(a.data(), dim, q);
      vec->phase_minus_i(b.data(), dim, q);
      check_close(a, b);

      for (int t = 0; t < n; ++t) {
        if (t == q) continue;
        a = random_state(n, 31 * n + 7 * q + t);
        b = a;
        ref.cnot(a.data(), dim, q, t);
        vec->cnot(b.data(), dim, q, t);
        check_close(a, b);
      }

      const double m[4] = {0.9, 0.2, 0.1, 0.8};
      auto va = random_reals(dim, 41 * n + q);
      auto vb = va;
      ref.axis_matrix2(va.data(), dim, q, m);
      vec->axis_matrix2(vb.data(), dim, q, m);
      for (std::size_t i = 0; i < dim; ++i) {
        CHECK(va[i] == doctest::Approx(vb[i]).epsilon(1e-12));
      }
    }

    const auto amps = random_state(n, 100 + n);
    std::vector<double> pa(dim), pb(dim);
    ref.abs_squared(amps.data(), pa.data(), dim);
    vec->abs_squared(amps.data(), pb.data(), dim);
    for (std::size_t i = 0; i < dim; ++i) {
      CHECK(pa[i] == doctest::Approx(pb[i]).epsilon(1e-14));
    }

    const auto v = random_reals(dim, 200 + n);
    CHECK(ref.parity_sum(v.data(), dim) ==
          doctest::Approx(vec->parity_sum(v.data(), dim)).epsilon(1e-12));

    std::vector<std::int32_t> fa(dim), fb(dim);
    Rng rng(300 + n);
    for (std::size_t i = 0; i < dim; ++i) {
      fa[i] = static_cast<std::int32_t>(rng.below(7)) - 3;
    }
    fb = fa;
    ref.fwht(fa.data(), dim);
    vec->fwht(fb.data(), dim);
    CHECK(fa == fb);
  }
}

TEST_CASE("hadamard twice is the identity") {
  const kern::Kernels& k = kern::active();
  auto a = random_state(4, 7);
  const auto original = a;
  k.hadamard(a.data(), a.size(), 2);
  k.hadamard(a.data(), a.size(), 2);
  check_close(a, original);
}

TEST_CASE("phase_minus_i four times is the identity") {
  const kern::Kernels& k = kern::active();
  auto a = random_state(3, 9);
  const auto original = a;
  for (int i = 0; i < 4; ++i) {
    k.phase_minus_i(a.data(), a.size(), 1);
  }
  check_close(a, original);
}

TEST_CASE("parity_sum matches a naive loop") {
  const auto v = random_reals(64, 55);
  double expected = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    expected += (std::popcount(i) & 1) ? -v[i] : v[i];
  }
  CHECK(kern::active().parity_sum(v.data(), v.size()) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("fwht is an involution up to scaling") {
  std::vector<std::int32_t> v = {3, -1, 2, 0, 5, 1, -2, 4};
  const auto original = v;
  kern::active().fwht(v.data(), v.size());
  kern::active().fwht(v.data(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(v[i] == original[i] * 8);
  }
}
