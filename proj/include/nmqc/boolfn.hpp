// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef NMQC_BOOLFN_HPP
#define NMQC_BOOLFN_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nmqc {

// Truth tables above this arity are refused by default (2^n growth).
inline constexpr int kDefaultArityCap = 20;

// A Boolean function f: {0,1}^n -> {0,1} stored as a packed truth table.
// Input x is encoded as an integer with bit 0 the least significant index bit.
// Immutable after construction; safe to share across threads.
class BooleanFunction {
 public:
  static BooleanFunction from_fn(int arity,
                                 const std::function<bool(std::uint32_t)>& fn);
  static BooleanFunction from_table_string(int arity, std::string_view bits);
  static BooleanFunction constant(int arity, bool value);

  // Parses the JSON truth-table format {"arity": 3, "table": "01101001"}
  // (table index 0 first).
  static BooleanFunction from_json_text(std::string_view json_text);
  static BooleanFunction load(const std::string& path);

  int arity() const { return arity_; }
  std::size_t domain_size() const { return std::size_t{1} << arity_; }

  // Table lookup by input index.
  bool value(std::uint32_t x) const {
    return (words_[x >> 6] >> (x & 63)) & 1;
  }

  // Table lookup by explicit bit vector; throws on arity mismatch.
  bool eval(std::span<const std::uint8_t> bits) const;

  std::string table_string() const;
  std::string to_json_text() const;

  bool operator==(const BooleanFunction& other) const = default;

 private:
  BooleanFunction(int arity, std::vector<std::uint64_t> words)
      : arity_(arity), words_(std::move(words)) {}

  int arity_;
  std::vector<std::uint64_t> words_;
};

// g(x) = (mask . x) xor constant_bit.
struct AffineFunction {
  std::uint32_t mask = 0;
  int constant_bit = 0;

  bool eval(std::uint32_t x) const;
  BooleanFunction to_function(int arity) const;
};

// coefficients[a] = sum_x (-1)^(f(x) xor a.x); satisfies Parseval
// sum_a coefficients[a]^2 = 2^(2n).
struct WalshSpectrum {
  int arity = 0;
  std::vector<std::int32_t> coefficients;

  std::int32_t max_abs() const;
};

// The symmetric quadratic h_k(x) = xor_{i<j} x_i x_j xor xor_i x_i, bent for
// even k. Requires k >= 2; throws std::length_error above arity_cap.
BooleanFunction make_hk(int k, int arity_cap = kDefaultArityCap);

// NAND2, OR3, OR3XOR, H3, H4, H5, H6 (case-insensitive).
BooleanFunction named_function(std::string_view name);

// Computed with the fast Walsh-Hadamard butterfly, O(n 2^n).
WalshSpectrum walsh_spectrum(const BooleanFunction& f);

// Hamming distance to the nearest affine function: 2^(n-1) - max_a|W[a]|/2.
int nonlinearity(const BooleanFunction& f);

// A nearest affine function and its distance (= nonlinearity). Ties broken by
// smallest (mask, constant) lexicographically.
std::pair<AffineFunction, int> closest_affine(const BooleanFunction& f);

// True iff arity is even and the Walsh spectrum is flat at |W[a]| = 2^(n/2).
bool is_bent(const BooleanFunction& f);

}  // namespace nmqc

#endif  // NMQC_BOOLFN_HPP
