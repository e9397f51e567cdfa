// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef NMQC_GAME_HPP
#define NMQC_GAME_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nmqc/boolfn.hpp"

namespace nmqc {

// One NMQC game: compute target f of an n-bit input x sampled from xi, by
// measuring l qubits of a GHZ state in bases chosen through the parity
// pre-processing s = (P x) mod 2 and combining outcome bits by parity.
//
// Pre-processing rows are (n+1)-bit masks over x extended with a constant-1
// bit at position n, so rows can carry affine offsets (the NAND2 game needs
// s_2 = x_0 xor x_1 xor 1 and s_3 = 1).
struct NmqcGame {
  std::string name;
  BooleanFunction target;
  int qubits = 0;                               // l
  std::vector<std::uint32_t> preprocess_rows;   // l masks over n+1 bits
  std::vector<double> distribution;             // xi, length 2^n
  std::vector<double> angles;                   // phi_j in (-pi, pi], length l
  int post_bit = 0;                             // c

  int arity() const { return target.arity(); }
};

// Throws unless xi is a distribution (sum 1 within 1e-12), shapes line up
// and angles lie in (-pi, pi].
void validate_game(const NmqcGame& game);

// s = (P x) mod 2 as a bitmask (bit j = s_j).
std::uint32_t preprocess_mask(const NmqcGame& game, std::uint32_t x);

// Bit-vector form of the pre-processing; throws on arity mismatch.
std::vector<std::uint8_t> preprocess(const NmqcGame& game,
                                     std::span<const std::uint8_t> x);

// Measurement bases for input x under the standard phi = pi/2 map
// (s_j = 0 -> X, s_j = 1 -> Y), qubit 0 first.
std::string setting_string(const NmqcGame& game, std::uint32_t x);

struct BellTerm {
  std::string settings;
  double coefficient;  // aggregated (-1)^f(x) xi(x) over inputs with these bases
};

struct BellInequality {
  std::vector<BellTerm> terms;  // ordered by first contributing input
  double classical_bound = 0.0;
  double quantum_bound = 0.0;
};

// NAND2 | OR3 | OR3XOR | H3..H6 | HK:<k>. Distributions and pre-processing
// follow the published games; all angles are pi/2 and c = 0.
NmqcGame standard_game(std::string_view name);

// Groups inputs by setting string, sums the signed weights and certifies the
// bounds via classical_bound_bruteforce and ghz_value.
BellInequality bell_coefficients(const NmqcGame& game);

// True iff exp(i sum_j s_j phi_j) = (-1)^(f(x)+c) for every input, i.e. the
// game computes f with certainty on the GHZ state.
bool check_deterministic(const NmqcGame& game);

// A deterministic local strategy: site j outputs (-1)^(bit j of m0/m1) when
// its setting bit is 0/1.
struct LhvStrategy {
  std::uint32_t outputs_s0 = 0;
  std::uint32_t outputs_s1 = 0;
  double beta = 0.0;
};

double lhv_strategy_value(const NmqcGame& game, std::uint32_t outputs_s0,
                          std::uint32_t outputs_s1);

// Exhaustive maximum over all 4^l deterministic local strategies (the LHV
// bound, by convexity). Capped at l = 16.
double classical_bound_bruteforce(const NmqcGame& game);
LhvStrategy best_lhv_strategy(const NmqcGame& game);

// Closed form for the h_k games: 2^(-k/2) for even k, 2^(-(k-1)/2) for odd.
double classical_bound_formula(int k);

// Generic route for uniform-xi games with affine-complete pre-processing:
// beta_c = 2 (2^n - NL(f)) / 2^n - 1.
double classical_bound_from_nonlinearity(const BooleanFunction& f);

// Bell value with exact GHZ-state expectation values (no sampling); realizes
// beta_q for the standard games. Requires all angles = pi/2.
double ghz_value(const NmqcGame& game);

// JSON round trip; target may be a named function or an inline truth table.
NmqcGame game_from_json_text(std::string_view json_text);
std::string game_to_json_text(const NmqcGame& game);
NmqcGame load_game(const std::string& path);

// Name, HK:<k> form, or a JSON file path.
NmqcGame resolve_game(const std::string& name_or_path);

}  // namespace nmqc

#endif  // NMQC_GAME_HPP
