// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "nmqc/game.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <doctest.h>

#include "nmqc/rng.hpp"
#include "nmqc/sim.hpp"

using namespace nmqc;

namespace {

std::map<std::string, double> term_map(const BellInequality& ineq) {
  std::map<std::string, double> m;
  for (const BellTerm& t : ineq.terms) {
    m[t.settings] += t.coefficient;
  }
  return m;
}

// Success probability by direct game play from exact per-setting outcome
// statistics, independent of the beta = 2 p_s - 1 identity.
double play_ghz_exactly(const NmqcGame& game) {
  const StateVector ghz = StateVector::ghz(game.qubits);
  double p_s = 0.0;
  for (std::uint32_t x = 0; x < game.target.domain_size(); ++x) {
    const double e = expectation(ghz, setting_string(game, x));
    const double e_z = (game.post_bit ? -1.0 : 1.0) * e;
    const double p_match =
        game.target.value(x) ? (1.0 - e_z) / 2.0 : (1.0 + e_z) / 2.0;
    p_s += game.distribution[x] * p_match;
  }
  return p_s;
}

double play_lhv_exactly(const NmqcGame& game, const LhvStrategy& strat) {
  const std::uint32_t l_mask = (std::uint32_t{1} << game.qubits) - 1;
  double p_s = 0.0;
  for (std::uint32_t x = 0; x < game.target.domain_size(); ++x) {
    const std::uint32_t s = preprocess_mask(game, x);
    const std::uint32_t picked =
        (strat.outputs_s0 & ~s & l_mask) | (strat.outputs_s1 & s);
    const int z = (std::popcount(picked) & 1) ^ game.post_bit;
    if (z == static_cast<int>(game.target.value(x))) {
      p_s += game.distribution[x];
    }
  }
  return p_s;
}

}  // namespace

TEST_CASE("preprocessing maps inputs to settings") {
  const NmqcGame h3 = standard_game("H3");
  const std::vector<std::uint8_t> x101 = {1, 0, 1};
  const std::vector<std::uint8_t> s = preprocess(h3, x101);
  CHECK(s == std::vector<std::uint8_t>{1, 0, 1, 0});
  CHECK(setting_string(h3, 0b101) == "YXYX");

  const NmqcGame nand2 = standard_game("NAND2");
  CHECK(setting_string(nand2, 0b11) == "YYYY");
  CHECK(setting_string(nand2, 0b00) == "XXYY");  // constant rows fire at x = 0

  CHECK(preprocess_mask(h3, 0) == 0);
  for (int k = 3; k <= 6; ++k) {
    CHECK(preprocess_mask(standard_game("HK:" + std::to_string(k)), 0) == 0);
  }

  const std::vector<std::uint8_t> wrong = {1, 0};
  CHECK_THROWS_AS(preprocess(h3, wrong), std::invalid_argument);
}

TEST_CASE("standard games match their published form") {
  const NmqcGame h4 = standard_game("H4");
  CHECK(h4.qubits == 5);
  CHECK(h4.distribution == std::vector<double>(16, 1.0 / 16.0));
  for (int i = 0; i < 4; ++i) {
    CHECK(h4.preprocess_rows[i] == (std::uint32_t{1} << i));
  }
  CHECK(h4.preprocess_rows[4] == 0b1111);

  const NmqcGame or3 = standard_game("OR3");
  CHECK(or3.distribution[0] == doctest::Approx(0.3));
  for (int x = 1; x < 8; ++x) {
    CHECK(or3.distribution[x] == doctest::Approx(0.1));
  }

  const NmqcGame nand2 = standard_game("NAND2");
  CHECK(nand2.distribution == std::vector<double>(4, 0.25));
  CHECK(nand2.qubits == 4);

  CHECK(standard_game("HK:4").preprocess_rows ==
        standard_game("H4").preprocess_rows);
  CHECK_THROWS_AS(standard_game("NOPE"), std::invalid_argument);
  CHECK_THROWS_AS(standard_game("HK:x"), std::invalid_argument);
}

TEST_CASE("bell coefficients reproduce the published tables") {
  // Two-bit game: (-1/4) XXYY, (-1/4) YXXY, (-1/4) XYXY, (+1/4) YYYY.
  const auto nand2 = term_map(bell_coefficients(standard_game("NAND2")));
  REQUIRE(nand2.size() == 4);
  CHECK(nand2.at("XXYY") == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(nand2.at("YXXY") == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(nand2.at("XYXY") == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(nand2.at("YYYY") == doctest::Approx(+0.25).epsilon(1e-14));

  // Three-bit games share the settings map:
  // x:        000     100     010     001     110     101     011     111
  // settings  XXXX    YXXY    XYXY    XXYY    YYXX    YXYX    XYYX    YYYY
  const auto or3 = term_map(bell_coefficients(standard_game("OR3")));
  REQUIRE(or3.size() == 8);
  CHECK(or3.at("XXXX") == doctest::Approx(+0.3).epsilon(1e-14));
  for (const char* s : {"YXXY", "XYXY", "XXYY", "YYXX", "YXYX", "XYYX", "YYYY"}) {
    CHECK(or3.at(s) == doctest::Approx(-0.1).epsilon(1e-14));
  }

  const auto or3x = term_map(bell_coefficients(standard_game("OR3XOR")));
  CHECK(or3x.at("XXXX") == doctest::Approx(+1.0 / 16).epsilon(1e-14));
  CHECK(or3x.at("YXXY") == doctest::Approx(-3.0 / 16).epsilon(1e-14));
  CHECK(or3x.at("XYXY") == doctest::Approx(-3.0 / 16).epsilon(1e-14));
  CHECK(or3x.at("XXYY") == doctest::Approx(-1.0 / 16).epsilon(1e-14));
  CHECK(or3x.at("YYXX") == doctest::Approx(-3.0 / 16).epsilon(1e-14));
  CHECK(or3x.at("YXYX") == doctest::Approx(+1.0 / 16).epsilon(1e-14));
  CHECK(or3x.at("XYYX") == doctest::Approx(-3.0 / 16).epsilon(1e-14));
  CHECK(or3x.at("YYYY") == doctest::Approx(+1.0 / 16).epsilon(1e-14));

  const auto h3 = term_map(bell_coefficients(standard_game("H3")));
  CHECK(h3.at("XXXX") == doctest::Approx(+0.125).epsilon(1e-14));
  CHECK(h3.at("YYYY") == doctest::Approx(+0.125).epsilon(1e-14));
  for (const char* s : {"YXXY", "XYXY", "XXYY", "YYXX", "YXYX", "XYYX"}) {
    CHECK(h3.at(s) == doctest::Approx(-0.125).epsilon(1e-14));
  }
}

TEST_CASE("bell coefficients aggregate colliding settings") {
  // s_0 = x_0 xor x_1, s_1 = 0: inputs pair up on the same settings string
  // with opposite signs, so the aggregated coefficients cancel to zero.
  const NmqcGame game{"collide",
                      AffineFunction{0b01, 0}.to_function(2),
                      2,
                      {0b011, 0b000},
                      std::vector<double>(4, 0.25),
                      std::vector<double>(2, 3.14159265358979323846 / 2),
                      0};
  const BellInequality ineq = bell_coefficients(game);
  REQUIRE(ineq.terms.size() == 2);
  for (const BellTerm& t : ineq.terms) {
    CHECK(t.coefficient == doctest::Approx(0.0));
  }
  CHECK(ghz_value(game) == doctest::Approx(0.0));
}

TEST_CASE("bell coefficients conserve weight") {
  for (const char* name : {"NAND2", "OR3", "OR3XOR", "H3", "H4", "H5", "H6"}) {
    const BellInequality ineq = bell_coefficients(standard_game(name));
    double total = 0.0;
    for (const BellTerm& t : ineq.terms) {
      total += std::abs(t.coefficient);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ineq.classical_bound <= ineq.quantum_bound + 1e-12);
    CHECK(ineq.quantum_bound <= 1.0 + 1e-12);
  }
}

TEST_CASE("determinism condition") {
  for (int k = 3; k <= 8; ++k) {
    CHECK(check_deterministic(standard_game("HK:" + std::to_string(k))));
  }
  CHECK_FALSE(check_deterministic(standard_game("OR3")));
  CHECK_FALSE(check_deterministic(standard_game("OR3XOR")));
  // NAND2 has beta_q = 1: the phase condition holds at all four inputs.
  CHECK(check_deterministic(standard_game("NAND2")));

  // Constant-0 target with zero pre-processing: both sides are always 1.
  const NmqcGame trivial{
      "trivial", BooleanFunction::constant(2, false), 2, {0, 0},
      std::vector<double>(4, 0.25),
      std::vector<double>(2, 3.14159265358979323846 / 2), 0};
  CHECK(check_deterministic(trivial));
}

TEST_CASE("classical bounds by brute force") {
  CHECK(classical_bound_bruteforce(standard_game("H3")) == 0.5);
  CHECK(classical_bound_bruteforce(standard_game("NAND2")) == 0.5);
  CHECK(classical_bound_bruteforce(standard_game("OR3")) ==
        doctest::Approx(0.4).epsilon(1e-14));
  // Constant output 1 agrees with OR3^xor on weight 13/16, so the LHV
  // maximum is 2*(13/16) - 1 = 10/16; no strategy can do better here.
  CHECK(classical_bound_bruteforce(standard_game("OR3XOR")) ==
        doctest::Approx(10.0 / 16).epsilon(1e-14));

  NmqcGame big = standard_game("H3");
  big.qubits = 17;
  big.preprocess_rows.assign(17, 0);
  big.angles.assign(17, big.angles[0]);
  CHECK_THROWS_AS(classical_bound_bruteforce(big), std::length_error);
}

TEST_CASE("no strategy beats the brute-force bound") {
  const NmqcGame game = standard_game("OR3XOR");
  const double bound = classical_bound_bruteforce(game);
  Rng rng(4242);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::uint32_t a = static_cast<std::uint32_t>(rng.below(16));
    const std::uint32_t b = static_cast<std::uint32_t>(rng.below(16));
    CHECK(lhv_strategy_value(game, a, b) <= bound + 1e-12);
  }
}

TEST_CASE("classical bound closed form and nonlinearity route") {
  CHECK(classical_bound_formula(3) == 0.5);
  CHECK(classical_bound_formula(4) == 0.25);
  CHECK(classical_bound_formula(5) == 0.25);
  CHECK(classical_bound_formula(6) == 0.125);
  CHECK_THROWS_AS(classical_bound_formula(1), std::invalid_argument);

  // All three routes agree for the h_k family (exact dyadic arithmetic).
  for (int k = 2; k <= 5; ++k) {
    const NmqcGame game = standard_game("HK:" + std::to_string(k));
    const double brute = classical_bound_bruteforce(game);
    CHECK(brute == classical_bound_formula(k));
    CHECK(brute == classical_bound_from_nonlinearity(game.target));
  }
  const NmqcGame h6 = standard_game("H6");
  CHECK(classical_bound_bruteforce(h6) ==
        doctest::Approx(classical_bound_formula(6)).epsilon(1e-12));
  CHECK(classical_bound_bruteforce(h6) ==
        doctest::Approx(classical_bound_from_nonlinearity(h6.target)).epsilon(1e-12));

  // NAND2 is uniform as well: brute force equals the nonlinearity route.
  const NmqcGame nand2 = standard_game("NAND2");
  CHECK(classical_bound_bruteforce(nand2) ==
        classical_bound_from_nonlinearity(nand2.target));
}

TEST_CASE("ghz_value matches the published quantum bounds") {
  CHECK(ghz_value(standard_game("NAND2")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ghz_value(standard_game("OR3")) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(ghz_value(standard_game("OR3XOR")) ==
        doctest::Approx(14.0 / 16).epsilon(1e-12));
  for (int k = 3; k <= 8; ++k) {
    CHECK(ghz_value(standard_game("HK:" + std::to_string(k))) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("success probability consistency by direct play") {
  for (const char* name : {"OR3", "H3", "NAND2"}) {
    const NmqcGame game = standard_game(name);
    const double beta_q = ghz_value(game);
    CHECK(play_ghz_exactly(game) == doctest::Approx((beta_q + 1) / 2).epsilon(1e-12));

    const LhvStrategy best = best_lhv_strategy(game);
    CHECK(play_lhv_exactly(game, best) ==
          doctest::Approx((best.beta + 1) / 2).epsilon(1e-12));
  }
}

TEST_CASE("random games satisfy the structural bounds") {
  Rng rng(20260809);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(3));
    const int l = 2 + static_cast<int>(rng.below(3));
    const BooleanFunction f = BooleanFunction::from_fn(
        n, [&](std::uint32_t) { return rng.below(2) == 1; });
    std::vector<std::uint32_t> rows(l);
    for (auto& row : rows) {
      row = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << (n + 1)));
    }
    std::vector<double> xi(std::size_t{1} << n);
    double sum = 0.0;
    for (double& w : xi) {
      w = rng.uniform() + 0.01;
      sum += w;
    }
    for (double& w : xi) w /= sum;
    const NmqcGame game{"random",
                        f,
                        l,
                        rows,
                        xi,
                        std::vector<double>(l, 3.14159265358979323846 / 2),
                        static_cast<int>(rng.below(2))};

    // The constant strategies alone reach |sum_x (-1)^(f+c) xi|.
    double floor = 0.0;
    for (std::uint32_t x = 0; x < f.domain_size(); ++x) {
      floor += ((f.value(x) ^ game.post_bit) ? -1.0 : 1.0) * xi[x];
    }
    const double bound = classical_bound_bruteforce(game);
    CHECK(bound >= std::abs(floor) - 1e-12);
    CHECK(bound <= 1.0 + 1e-12);

    const double beta_q = ghz_value(game);
    CHECK(std::abs(beta_q) <= 1.0 + 1e-12);

    // The phase condition holding everywhere is exactly a perfect GHZ score.
    if (check_deterministic(game)) {
      CHECK(beta_q == doctest::Approx(1.0).epsilon(1e-10));
    }
    if (beta_q < 1.0 - 1e-9) {
      CHECK_FALSE(check_deterministic(game));
    }
  }
}

TEST_CASE("game json round trip") {
  const NmqcGame game = standard_game("OR3XOR");
  const NmqcGame back = game_from_json_text(game_to_json_text(game));
  CHECK(back.qubits == game.qubits);
  CHECK(back.preprocess_rows == game.preprocess_rows);
  CHECK(back.distribution == game.distribution);
  CHECK(back.post_bit == game.post_bit);
  CHECK(back.target == game.target);
  CHECK(bell_coefficients(back).quantum_bound ==
        doctest::Approx(ghz_value(game)).epsilon(1e-14));

  CHECK_THROWS_AS(game_from_json_text("{}"), std::invalid_argument);
  CHECK_THROWS_AS(
      game_from_json_text(
          R"({"target": "NAND2", "preprocess": [[1,0],[0,1]]})"),
      std::invalid_argument);  // rows must carry the constant column
}

TEST_CASE("game validation") {
  NmqcGame bad = standard_game("H3");
  bad.distribution[0] += 0.5;
  CHECK_THROWS_AS(validate_game(bad), std::invalid_argument);

  NmqcGame negative = standard_game("H3");
  negative.distribution[0] = -0.125;
  negative.distribution[1] = 0.375;
  CHECK_THROWS_AS(validate_game(negative), std::invalid_argument);

  NmqcGame angle = standard_game("H3");
  angle.angles[0] = 7.0;
  CHECK_THROWS_AS(validate_game(angle), std::invalid_argument);

  NmqcGame rows = standard_game("H3");
  rows.preprocess_rows.pop_back();
  CHECK_THROWS_AS(validate_game(rows), std::invalid_argument);
}
