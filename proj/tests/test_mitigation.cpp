// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "nmqc/mitigation.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <doctest.h>

#include "nmqc/circuit.hpp"
#include "nmqc/game.hpp"
#include "nmqc/rng.hpp"
#include "nmqc/sim.hpp"
#include "nmqc/stats.hpp"

using namespace nmqc;

namespace {

// Oracle: the projection threshold tau solves sum_i max(v_i - tau, 0) = 1,
// a strictly decreasing function of tau, so bisection finds it without the
// sort-based derivation.
ProbabilityVector project_by_bisection(const std::vector<double>& v) {
  double lo = -2.0, hi = 2.0;
  for (double x : v) {
    lo = std::min(lo, x - 2.0);
    hi = std::max(hi, x);
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double tau = (lo + hi) / 2.0;
    double mass = 0.0;
    for (double x : v) mass += std::max(x - tau, 0.0);
    (mass > 1.0 ? lo : hi) = tau;
  }
  ProbabilityVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::max(v[i] - (lo + hi) / 2.0, 0.0);
  }
  return out;
}

ProbabilityVector random_probability(int dim, std::uint64_t seed) {
  Rng rng(seed);
  ProbabilityVector p(dim);
  double sum = 0.0;
  for (double& x : p) {
    x = rng.uniform() + 1e-4;
    sum += x;
  }
  for (double& x : p) x /= sum;
  return p;
}

}  // namespace

TEST_CASE("project_simplex worked examples") {
  const ProbabilityVector a = project_simplex({1.2, -0.2});
  CHECK(a[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a[1] == doctest::Approx(0.0));

  const ProbabilityVector feasible = {0.25, 0.5, 0.25};
  const ProbabilityVector b = project_simplex(feasible);
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(b[i] == doctest::Approx(feasible[i]).epsilon(1e-14));
  }

  const ProbabilityVector c = project_simplex({0.5, 0.5, 0.5});
  for (double x : c) {
    CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }

  CHECK_THROWS_AS(project_simplex({0.1, std::numeric_limits<double>::infinity()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(project_simplex({std::nan("")}), std::invalid_argument);
}

TEST_CASE("project_simplex matches the bisection oracle and is idempotent") {
  Rng rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 2 + static_cast<int>(rng.below(15));
    std::vector<double> v(dim);
    for (double& x : v) x = 3.0 * (rng.uniform() - 0.4);
    const ProbabilityVector fast = project_simplex(v);
    const ProbabilityVector slow = project_by_bisection(v);
    double sum = 0.0;
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(std::abs(fast[i] - slow[i]) < 1e-9);
      CHECK(fast[i] >= 0.0);
      sum += fast[i];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    const ProbabilityVector twice = project_simplex(fast);
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(std::abs(twice[i] - fast[i]) < 1e-12);
    }
  }
}

TEST_CASE("projection is the nearest feasible point (spot check)") {
  Rng rng(29);
  std::vector<double> v(8);
  for (double& x : v) x = 2.0 * (rng.uniform() - 0.3);
  const ProbabilityVector proj = project_simplex(v);
  double proj_dist = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    proj_dist += (v[i] - proj[i]) * (v[i] - proj[i]);
  }
  for (int trial = 0; trial < 10000; ++trial) {
    const ProbabilityVector q = random_probability(8, 1000 + trial);
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      d += (v[i] - q[i]) * (v[i] - q[i]);
    }
    CHECK(d >= proj_dist - 1e-12);
  }
}

TEST_CASE("qrem_correct worked examples") {
  const std::vector<CalibrationMatrix> identity(2, CalibrationMatrix{});
  const ProbabilityVector p = {0.5, 0.25, 0.125, 0.125};
  const ProbabilityVector out = qrem_correct(p, identity);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(out[i] == doctest::Approx(p[i]).epsilon(1e-14));
  }

  // Single qubit, A = [[0.9, 0.2], [0.1, 0.8]]: p_noisy = A (1,0)^T.
  const CalibrationMatrix a = CalibrationMatrix::from_rates(0.1, 0.2);
  const ProbabilityVector recovered =
      qrem_correct({0.9, 0.1}, std::vector<CalibrationMatrix>{a});
  CHECK(recovered[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(recovered[1] == doctest::Approx(0.0));

  // b^{-1} (0.74, 0.26) = (1.2, -0.2), which projects to (1, 0).
  const CalibrationMatrix b = CalibrationMatrix::from_rates(0.3, 0.5);
  const ProbabilityVector projected =
      qrem_correct({0.74, 0.26}, std::vector<CalibrationMatrix>{b});
  CHECK(projected[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(projected[1] == doctest::Approx(0.0));

  const CalibrationMatrix singular = CalibrationMatrix::symmetric(0.5);
  try {
    qrem_correct({0.5, 0.5}, std::vector<CalibrationMatrix>{singular});
    FAIL("expected a mitigation error for a singular calibration");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("condition number") != std::string::npos);
  }
}

TEST_CASE("qrem round trip with exact calibrations") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<CalibrationMatrix> cal;
    for (int q = 0; q < n; ++q) {
      cal.push_back(CalibrationMatrix::from_rates(0.01 + 0.01 * q, 0.03));
    }
    const ProbabilityVector p = random_probability(1 << n, 500 + n);
    const ProbabilityVector noisy = apply_local_readout(p, cal);
    const ProbabilityVector back = qrem_correct(noisy, cal);
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(std::abs(back[i] - p[i]) < 1e-9);
    }
  }
}

TEST_CASE("local calibration estimation") {
  // Noiseless sampler: exact identity matrices.
  const BasisSampler ideal = make_basis_sampler(3, {}, 11);
  const auto cal0 = build_local_calibrations(ideal, 3, 1000);
  for (const CalibrationMatrix& a : cal0) {
    CHECK(a.p(1, 0) == 0.0);
    CHECK(a.p(0, 1) == 0.0);
  }

  // Symmetric 5% flips recovered within 3 sigma at 1e5 shots.
  NoiseModel noise;
  for (int q = 0; q < 3; ++q) {
    noise.readout.push_back(CalibrationMatrix::symmetric(0.05));
  }
  const long long shots = 100000;
  const auto cal = build_local_calibrations(make_basis_sampler(3, noise, 5), 3, shots);
  const double sigma = std::sqrt(0.05 * 0.95 / static_cast<double>(shots));
  for (const CalibrationMatrix& a : cal) {
    CHECK(std::abs(a.p(1, 0) - 0.05) < 3.0 * sigma);
    CHECK(std::abs(a.p(0, 1) - 0.05) < 3.0 * sigma);
  }

  // Asymmetric p(0|1) = 0.2.
  NoiseModel asym;
  asym.readout.push_back(CalibrationMatrix::from_rates(0.02, 0.2));
  const auto cal1 = build_local_calibrations(make_basis_sampler(1, asym, 6), 1, shots);
  CHECK(cal1[0].p(0, 1) == doctest::Approx(0.2).epsilon(0.1));
  CHECK(cal1[0].p(1, 1) == doctest::Approx(0.8).epsilon(0.05));

  CHECK_THROWS_AS(build_local_calibrations(ideal, 3, 0), std::invalid_argument);
}

TEST_CASE("global calibration estimation") {
  const BasisSampler ideal = make_basis_sampler(2, {}, 3);
  const GlobalCalibration g0 = build_global_calibration(ideal, 2, 500);
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t y = 0; y < 4; ++y) {
      CHECK(g0.entries[x * 4 + y] == (x == y ? 1.0 : 0.0));
    }
  }

  // Independent local noise: estimate approaches the tensor product.
  NoiseModel noise;
  noise.readout = {CalibrationMatrix::symmetric(0.04),
                   CalibrationMatrix::symmetric(0.08)};
  const GlobalCalibration est =
      build_global_calibration(make_basis_sampler(2, noise, 9), 2, 200000);
  const GlobalCalibration exact = kron_calibration(noise.readout);
  for (std::size_t i = 0; i < est.entries.size(); ++i) {
    CHECK(std::abs(est.entries[i] - exact.entries[i]) < 5e-3);
  }

  // n = 1 reduces to the local estimate.
  NoiseModel one;
  one.readout.push_back(CalibrationMatrix::symmetric(0.1));
  const GlobalCalibration g1 =
      build_global_calibration(make_basis_sampler(1, one, 4), 1, 100000);
  const auto local =
      build_local_calibrations(make_basis_sampler(1, one, 4), 1, 100000);
  CHECK(g1.entries[0] == doctest::Approx(local[0].p(0, 0)));
  CHECK(g1.entries[2] == doctest::Approx(local[0].p(1, 0)));

  CHECK_THROWS_AS(build_global_calibration(ideal, 13, 10), std::length_error);
}

TEST_CASE("mem_correct") {
  GlobalCalibration identity;
  identity.n_qubits = 2;
  identity.entries.assign(16, 0.0);
  for (int i = 0; i < 4; ++i) identity.entries[i * 4 + i] = 1.0;
  const ProbabilityVector p = {0.4, 0.3, 0.2, 0.1};
  const ProbabilityVector same = mem_correct(p, identity);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(same[i] == doctest::Approx(p[i]).epsilon(1e-12));
  }

  // Exact recovery through a known local model.
  std::vector<CalibrationMatrix> cal = {CalibrationMatrix::from_rates(0.02, 0.05),
                                        CalibrationMatrix::from_rates(0.03, 0.01),
                                        CalibrationMatrix::symmetric(0.04)};
  const ProbabilityVector truth = random_probability(8, 777);
  const ProbabilityVector noisy = apply_local_readout(truth, cal);
  const ProbabilityVector recovered = mem_correct(noisy, kron_calibration(cal));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    CHECK(std::abs(recovered[i] - truth[i]) < 1e-9);
  }

  // Estimated calibrations: recovery error shrinks as shots grow.
  NoiseModel noise;
  noise.readout = cal;
  const auto recover_error = [&](long long shots) {
    const GlobalCalibration est =
        build_global_calibration(make_basis_sampler(3, noise, 31), 3, shots);
    const ProbabilityVector rec = mem_correct(noisy, est);
    double err = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      err += std::abs(rec[i] - truth[i]);
    }
    return err;
  };
  CHECK(recover_error(100000) < recover_error(1000));

  CHECK_THROWS_AS(mem_correct({0.5, 0.5}, identity), std::invalid_argument);
}

TEST_CASE("exact-calibration qrem cannot push beta above the noiseless value") {
  // Exact distributions, no shots: mitigation removes the readout bias and
  // lands on the noiseless Bell value, never beyond it.
  for (const char* name : {"H3", "OR3", "OR3XOR"}) {
    const NmqcGame game = standard_game(name);
    const double beta_q = ghz_value(game);
    std::vector<int> qubits(game.qubits);
    for (int i = 0; i < game.qubits; ++i) qubits[i] = i;
    std::string edges;
    for (int i = 0; i + 1 < game.qubits; ++i) {
      if (i) edges += ",";
      edges += "[" + std::to_string(i) + "," + std::to_string(i + 1) + "]";
    }
    const CouplingGraph line = CouplingGraph::from_json_text(
        R"({"n_qubits": )" + std::to_string(game.qubits) + R"(, "edges": [)" +
        edges + "]}");
    const QubitConfiguration cfg = make_configuration(line, qubits);
    const Circuit circuit = ghz_circuit(cfg, select_root(cfg, line));
    NoiseModel noise;
    for (int q = 0; q < game.qubits; ++q) {
      noise.readout.push_back(CalibrationMatrix::symmetric(0.02 + 0.01 * q));
    }
    std::vector<ExpectationEstimate> mitigated;
    for (std::uint32_t x = 0; x < game.target.domain_size(); ++x) {
      const std::string s = setting_string(game, x);
      const ProbabilityVector corrected = qrem_correct(
          exact_setting_distribution(circuit, s, noise), noise.readout);
      double e = 0.0;
      for (std::size_t i = 0; i < corrected.size(); ++i) {
        e += (std::popcount(i) & 1) ? -corrected[i] : corrected[i];
      }
      mitigated.push_back(ExpectationEstimate{e, 0, s, x});
    }
    const double beta_mit = bell_value(game, mitigated).beta;
    CHECK(beta_mit <= beta_q + 1e-9);
    CHECK(beta_mit == doctest::Approx(beta_q).epsilon(1e-9));
  }
}

TEST_CASE("mem and qrem agree on exact local-noise inputs") {
  for (int n = 1; n <= 5; ++n) {
    std::vector<CalibrationMatrix> cal;
    for (int q = 0; q < n; ++q) {
      cal.push_back(CalibrationMatrix::symmetric(0.02 + 0.01 * q));
    }
    const ProbabilityVector p = random_probability(1 << n, 900 + n);
    const ProbabilityVector noisy = apply_local_readout(p, cal);
    const ProbabilityVector via_qrem = qrem_correct(noisy, cal);
    const ProbabilityVector via_mem = mem_correct(noisy, kron_calibration(cal));
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(std::abs(via_qrem[i] - via_mem[i]) < 1e-9);
    }
  }
}
