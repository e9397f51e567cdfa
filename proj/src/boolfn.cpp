// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "nmqc/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "nmqc/kernels.hpp"

namespace nmqc {

namespace {

void check_arity(int arity, int cap) {
  if (arity < 1) {
    throw std::invalid_argument("boolean function arity must be >= 1, got " +
                                std::to_string(arity));
  }
  if (arity > cap) {
    throw std::length_error("boolean function arity " + std::to_string(arity) +
                            " exceeds the table cap of " + std::to_string(cap));
  }
}

}  // namespace

BooleanFunction BooleanFunction::from_fn(
    int arity, const std::function<bool(std::uint32_t)>& fn) {
  check_arity(arity, kDefaultArityCap);
  const std::size_t n = std::size_t{1} << arity;
  std::vector<std::uint64_t> words((n + 63) / 64, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (fn(static_cast<std::uint32_t>(x))) {
      words[x >> 6] |= std::uint64_t{1} << (x & 63);
    }
  }
  return BooleanFunction(arity, std::move(words));
}

BooleanFunction BooleanFunction::from_table_string(int arity,
                                                   std::string_view bits) {
  check_arity(arity, kDefaultArityCap);
  const std::size_t n = std::size_t{1} << arity;
  if (bits.size() != n) {
    throw std::invalid_argument(
        "truth table for arity " + std::to_string(arity) + " needs " +
        std::to_string(n) + " entries, got " + std::to_string(bits.size()));
  }
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("truth table may only contain '0'/'1'");
    }
  }
  return from_fn(arity, [&](std::uint32_t x) { return bits[x] == '1'; });
}

BooleanFunction BooleanFunction::constant(int arity, bool value) {
  return from_fn(arity, [value](std::uint32_t) { return value; });
}

BooleanFunction BooleanFunction::from_json_text(std::string_view json_text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    if (!j.contains("arity") || !j.contains("table")) {
      throw std::invalid_argument(
          "function JSON needs \"arity\" and \"table\" fields");
    }
    return from_table_string(j.at("arity").get<int>(),
                             j.at("table").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid function JSON: ") +
                                e.what());
  }
}

BooleanFunction BooleanFunction::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open function file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

bool BooleanFunction::eval(std::span<const std::uint8_t> bits) const {
  if (static_cast<int>(bits.size()) != arity_) {
    throw std::invalid_argument("input has " + std::to_string(bits.size()) +
                                " bits, function arity is " +
                                std::to_string(arity_));
  }
  std::uint32_t x = 0;
  for (int i = 0; i < arity_; ++i) {
    if (bits[i] > 1) {
      throw std::invalid_argument("input bits must be 0 or 1");
    }
    x |= static_cast<std::uint32_t>(bits[i]) << i;
  }
  return value(x);
}

std::string BooleanFunction::table_string() const {
  std::string s(domain_size(), '0');
  for (std::size_t x = 0; x < domain_size(); ++x) {
    if (value(static_cast<std::uint32_t>(x))) s[x] = '1';
  }
  return s;
}

std::string BooleanFunction::to_json_text() const {
  nlohmann::json j;
  j["arity"] = arity_;
  j["table"] = table_string();
  return j.dump();
}

bool AffineFunction::eval(std::uint32_t x) const {
  return (std::popcount(x & mask) & 1) ^ constant_bit;
}

BooleanFunction AffineFunction::to_function(int arity) const {
  return BooleanFunction::from_fn(arity,
                                  [this](std::uint32_t x) { return eval(x); });
}

std::int32_t WalshSpectrum::max_abs() const {
  std::int32_t m = 0;
  for (std::int32_t c : coefficients) {
    m = std::max(m, std::abs(c));
  }
  return m;
}

BooleanFunction make_hk(int k, int arity_cap) {
  if (k < 2) {
    throw std::invalid_argument("h_k needs k >= 2, got " + std::to_string(k));
  }
  check_arity(k, arity_cap);
  // xor_{i<j} x_i x_j counts C(w,2) pairs of set bits and xor_i x_i counts w,
  // so h_k(x) = (C(w,2) + w) mod 2 = w(w+1)/2 mod 2 with w = popcount(x).
  return BooleanFunction::from_fn(k, [](std::uint32_t x) {
    const std::uint32_t w = static_cast<std::uint32_t>(std::popcount(x));
    return ((w * (w + 1) / 2) & 1) != 0;
  });
}

BooleanFunction named_function(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (up == "NAND2") {
    return BooleanFunction::from_fn(
        2, [](std::uint32_t x) { return ((x & 1) & (x >> 1) & 1) == 0; });
  }
  if (up == "OR3") {
    return BooleanFunction::from_fn(3,
                                    [](std::uint32_t x) { return x != 0; });
  }
  if (up == "OR3XOR") {
    return BooleanFunction::from_fn(3, [](std::uint32_t x) {
      const bool orv = x != 0;
      const bool x0x2 = (x & 1) && (x & 4);
      return orv != x0x2;
    });
  }
  if (up.size() == 2 && up[0] == 'H' && up[1] >= '3' && up[1] <= '6') {
    return make_hk(up[1] - '0');
  }
  throw std::invalid_argument("unknown function name: " + std::string(name));
}

WalshSpectrum walsh_spectrum(const BooleanFunction& f) {
  WalshSpectrum s;
  s.arity = f.arity();
  s.coefficients.resize(f.domain_size());
  for (std::size_t x = 0; x < f.domain_size(); ++x) {
    s.coefficients[x] = f.value(static_cast<std::uint32_t>(x)) ? -1 : 1;
  }
  kern::active().fwht(s.coefficients.data(), s.coefficients.size());
  return s;
}

int nonlinearity(const BooleanFunction& f) {
  const WalshSpectrum s = walsh_spectrum(f);
  return static_cast<int>((std::int64_t{1} << (f.arity() - 1)) -
                          s.max_abs() / 2);
}

std::pair<AffineFunction, int> closest_affine(const BooleanFunction& f) {
  const WalshSpectrum s = walsh_spectrum(f);
  const std::int64_t half = std::int64_t{1} << (f.arity() - 1);
  AffineFunction best;
  std::int64_t best_dist = std::int64_t{1} << f.arity();
  for (std::size_t a = 0; a < s.coefficients.size(); ++a) {
    for (int b = 0; b < 2; ++b) {
      // dist(f, a.x xor b) = 2^(n-1) - (-1)^b W[a]/2
      const std::int64_t d =
          half - (b ? -s.coefficients[a] : s.coefficients[a]) / 2;
      if (d < best_dist) {
        best_dist = d;
        best = AffineFunction{static_cast<std::uint32_t>(a), b};
      }
    }
  }
  return {best, static_cast<int>(best_dist)};
}

bool is_bent(const BooleanFunction& f) {
  if (f.arity() % 2 != 0) {
    return false;
  }
  const WalshSpectrum s = walsh_spectrum(f);
  const std::int32_t flat = std::int32_t{1} << (f.arity() / 2);
  return std::all_of(s.coefficients.begin(), s.coefficients.end(),
                     [&](std::int32_t c) { return std::abs(c) == flat; });
}

}  // namespace nmqc
