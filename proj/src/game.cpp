// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "nmqc/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "nmqc/sim.hpp"

namespace nmqc {

namespace {

constexpr double kPi = std::numbers::pi;

// Signed weights w(x) = (-1)^(f(x)+c) xi(x) and setting masks, shared by the
// Bell-value routes.
struct GameTables {
  std::vector<double> weight;
  std::vector<std::uint32_t> setting;
};

GameTables tabulate(const NmqcGame& game) {
  validate_game(game);
  const std::size_t inputs = game.target.domain_size();
  GameTables t;
  t.weight.resize(inputs);
  t.setting.resize(inputs);
  for (std::size_t x = 0; x < inputs; ++x) {
    const bool flip =
        game.target.value(static_cast<std::uint32_t>(x)) ^ (game.post_bit & 1);
    t.weight[x] = (flip ? -1.0 : 1.0) * game.distribution[x];
    t.setting[x] = preprocess_mask(game, static_cast<std::uint32_t>(x));
  }
  return t;
}

void require_xy_angles(const NmqcGame& game) {
  for (double phi : game.angles) {
    if (std::abs(phi - kPi / 2.0) > 1e-12) {
      throw std::invalid_argument(
          "game '" + game.name +
          "' uses measurement angles other than pi/2; only X/Y bases are supported here");
    }
  }
}

NmqcGame assemble(std::string name, BooleanFunction f, int qubits,
                  std::vector<std::uint32_t> rows, std::vector<double> xi) {
  NmqcGame g{std::move(name), std::move(f), qubits, std::move(rows),
             std::move(xi), std::vector<double>(qubits, kPi / 2.0), 0};
  validate_game(g);
  return g;
}

NmqcGame make_hk_game(int k) {
  std::vector<std::uint32_t> rows;
  for (int i = 0; i < k; ++i) {
    rows.push_back(std::uint32_t{1} << i);
  }
  rows.push_back((std::uint32_t{1} << k) - 1);  // s_k = parity of all inputs
  const std::size_t inputs = std::size_t{1} << k;
  return assemble("H" + std::to_string(k), make_hk(k), k + 1, std::move(rows),
                  std::vector<double>(inputs, 1.0 / static_cast<double>(inputs)));
}

// Shared pre-processing of the three-variate games:
// s_0 = x_0, s_1 = x_1, s_2 = x_2, s_3 = x_0 xor x_1 xor x_2.
std::vector<std::uint32_t> three_bit_rows() { return {0b0001, 0b0010, 0b0100, 0b0111}; }

}  // namespace

void validate_game(const NmqcGame& game) {
  const int n = game.arity();
  if (game.qubits < 1) {
    throw std::invalid_argument("game needs at least one qubit");
  }
  if (static_cast<int>(game.preprocess_rows.size()) != game.qubits) {
    throw std::invalid_argument("pre-processing needs one row per qubit");
  }
  const std::uint32_t row_mask = (std::uint32_t{1} << (n + 1)) - 1;
  for (std::uint32_t row : game.preprocess_rows) {
    if (row & ~row_mask) {
      throw std::invalid_argument("pre-processing row uses bits beyond the input width");
    }
  }
  if (game.distribution.size() != game.target.domain_size()) {
    throw std::invalid_argument("distribution must have one weight per input");
  }
  double sum = 0.0;
  for (double w : game.distribution) {
    if (w < 0.0) {
      throw std::invalid_argument("distribution weights must be non-negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("distribution sums to " + std::to_string(sum) +
                                ", expected 1");
  }
  if (static_cast<int>(game.angles.size()) != game.qubits) {
    throw std::invalid_argument("need one measurement angle per qubit");
  }
  for (double phi : game.angles) {
    if (!(phi > -kPi - 1e-12 && phi <= kPi + 1e-12)) {
      throw std::invalid_argument("angles must lie in (-pi, pi]");
    }
  }
  if (game.post_bit != 0 && game.post_bit != 1) {
    throw std::invalid_argument("post-processing bit must be 0 or 1");
  }
}

std::uint32_t preprocess_mask(const NmqcGame& game, std::uint32_t x) {
  const std::uint32_t extended = x | (std::uint32_t{1} << game.arity());
  std::uint32_t s = 0;
  for (int j = 0; j < game.qubits; ++j) {
    if (std::popcount(game.preprocess_rows[j] & extended) & 1) {
      s |= std::uint32_t{1} << j;
    }
  }
  return s;
}

std::vector<std::uint8_t> preprocess(const NmqcGame& game,
                                     std::span<const std::uint8_t> x) {
  if (static_cast<int>(x.size()) != game.arity()) {
    throw std::invalid_argument("input has " + std::to_string(x.size()) +
                                " bits, game arity is " +
                                std::to_string(game.arity()));
  }
  std::uint32_t xi = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 1) {
      throw std::invalid_argument("input bits must be 0 or 1");
    }
    xi |= static_cast<std::uint32_t>(x[i]) << i;
  }
  const std::uint32_t s = preprocess_mask(game, xi);
  std::vector<std::uint8_t> out(game.qubits);
  for (int j = 0; j < game.qubits; ++j) {
    out[j] = (s >> j) & 1;
  }
  return out;
}

std::string setting_string(const NmqcGame& game, std::uint32_t x) {
  const std::uint32_t s = preprocess_mask(game, x);
  std::string str(game.qubits, 'X');
  for (int j = 0; j < game.qubits; ++j) {
    if ((s >> j) & 1) str[j] = 'Y';
  }
  return str;
}

NmqcGame standard_game(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (up == "NAND2") {
    // s_0 = x_0, s_1 = x_1, s_2 = x_0 xor x_1 xor 1, s_3 = 1.
    return assemble("NAND2", named_function("NAND2"), 4,
                    {0b001, 0b010, 0b111, 0b100},
                    std::vector<double>(4, 0.25));
  }
  if (up == "H3") return make_hk_game(3);
  if (up == "H4") return make_hk_game(4);
  if (up == "H5") return make_hk_game(5);
  if (up == "H6") return make_hk_game(6);
  if (up.rfind("HK:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(up.substr(3));
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse k in game name '" +
                                  std::string(name) + "'");
    }
    return make_hk_game(k);
  }
  if (up == "OR3") {
    std::vector<double> xi(8, 0.1);
    xi[0] = 0.3;
    return assemble("OR3", named_function("OR3"), 4, three_bit_rows(),
                    std::move(xi));
  }
  if (up == "OR3XOR") {
    // Weight 1/16 on (0,0,0), (0,0,1), (1,0,1), (1,1,1) and 3/16 elsewhere.
    std::vector<double> xi(8, 3.0 / 16.0);
    for (std::uint32_t idx : {0u, 4u, 5u, 7u}) xi[idx] = 1.0 / 16.0;
    return assemble("OR3XOR", named_function("OR3XOR"), 4, three_bit_rows(),
                    std::move(xi));
  }
  throw std::invalid_argument("unknown game name: " + std::string(name));
}

BellInequality bell_coefficients(const NmqcGame& game) {
  const GameTables t = tabulate(game);
  require_xy_angles(game);
  BellInequality ineq;
  std::map<std::uint32_t, std::size_t> index_of;
  for (std::size_t x = 0; x < t.weight.size(); ++x) {
    const std::uint32_t s = t.setting[x];
    const auto [it, inserted] = index_of.try_emplace(s, ineq.terms.size());
    if (inserted) {
      ineq.terms.push_back(
          BellTerm{setting_string(game, static_cast<std::uint32_t>(x)), 0.0});
    }
    ineq.terms[it->second].coefficient += t.weight[x];
  }
  ineq.classical_bound = classical_bound_bruteforce(game);
  ineq.quantum_bound = ghz_value(game);
  return ineq;
}

bool check_deterministic(const NmqcGame& game) {
  const GameTables t = tabulate(game);
  for (std::size_t x = 0; x < t.weight.size(); ++x) {
    double phase = 0.0;
    for (int j = 0; j < game.qubits; ++j) {
      if ((t.setting[x] >> j) & 1) phase += game.angles[j];
    }
    const std::complex<double> lhs = std::polar(1.0, phase);
    const bool flip =
        game.target.value(static_cast<std::uint32_t>(x)) ^ (game.post_bit & 1);
    const std::complex<double> rhs(flip ? -1.0 : 1.0, 0.0);
    if (std::abs(lhs - rhs) > 1e-9) {
      return false;
    }
  }
  return true;
}

double lhv_strategy_value(const NmqcGame& game, std::uint32_t outputs_s0,
                          std::uint32_t outputs_s1) {
  const GameTables t = tabulate(game);
  double beta = 0.0;
  const std::uint32_t l_mask = (std::uint32_t{1} << game.qubits) - 1;
  for (std::size_t x = 0; x < t.weight.size(); ++x) {
    const std::uint32_t s = t.setting[x];
    const std::uint32_t picked = (outputs_s0 & ~s & l_mask) | (outputs_s1 & s);
    beta += (std::popcount(picked) & 1) ? -t.weight[x] : t.weight[x];
  }
  return beta;
}

LhvStrategy best_lhv_strategy(const NmqcGame& game) {
  if (game.qubits > 16) {
    throw std::length_error(
        "LHV brute force is capped at 16 qubits (4^l strategies); use the "
        "closed-form bound instead");
  }
  const GameTables t = tabulate(game);
  const std::uint32_t l_dim = std::uint32_t{1} << game.qubits;
  const std::uint32_t l_mask = l_dim - 1;
  LhvStrategy best{0, 0, -2.0};
  for (std::uint32_t a = 0; a < l_dim; ++a) {
    for (std::uint32_t b = 0; b < l_dim; ++b) {
      double beta = 0.0;
      for (std::size_t x = 0; x < t.weight.size(); ++x) {
        const std::uint32_t s = t.setting[x];
        const std::uint32_t picked = (a & ~s & l_mask) | (b & s);
        beta += (std::popcount(picked) & 1) ? -t.weight[x] : t.weight[x];
      }
      if (beta > best.beta) {
        best = LhvStrategy{a, b, beta};
      }
    }
  }
  return best;
}

double classical_bound_bruteforce(const NmqcGame& game) {
  return best_lhv_strategy(game).beta;
}

double classical_bound_formula(int k) {
  if (k < 2) {
    throw std::invalid_argument("h_k bound needs k >= 2");
  }
  const int shift = (k % 2 == 0) ? k / 2 : (k - 1) / 2;
  return 1.0 / static_cast<double>(std::int64_t{1} << shift);
}

double classical_bound_from_nonlinearity(const BooleanFunction& f) {
  const double inputs = static_cast<double>(std::int64_t{1} << f.arity());
  return 2.0 * (inputs - static_cast<double>(nonlinearity(f))) / inputs - 1.0;
}

double ghz_value(const NmqcGame& game) {
  const GameTables t = tabulate(game);
  require_xy_angles(game);
  const StateVector ghz = StateVector::ghz(game.qubits);
  std::map<std::uint32_t, double> cache;
  double beta = 0.0;
  for (std::size_t x = 0; x < t.weight.size(); ++x) {
    const std::uint32_t s = t.setting[x];
    auto it = cache.find(s);
    if (it == cache.end()) {
      it = cache.emplace(s, expectation(ghz, setting_string(game, static_cast<std::uint32_t>(x))))
               .first;
    }
    beta += t.weight[x] * it->second;
  }
  return beta;
}

namespace {

NmqcGame game_from_json(const nlohmann::json& j) {
  if (!j.contains("target")) {
    throw std::invalid_argument("game JSON needs a \"target\"");
  }
  BooleanFunction target =
      j.at("target").is_string()
          ? named_function(j.at("target").get<std::string>())
          : BooleanFunction::from_json_text(j.at("target").dump());
  const int n = target.arity();

  if (!j.contains("preprocess")) {
    throw std::invalid_argument("game JSON needs a \"preprocess\" matrix");
  }
  std::vector<std::uint32_t> rows;
  for (const auto& jrow : j.at("preprocess")) {
    if (static_cast<int>(jrow.size()) != n + 1) {
      throw std::invalid_argument(
          "pre-processing rows must have n+1 entries (constant column last)");
    }
    std::uint32_t row = 0;
    for (int i = 0; i <= n; ++i) {
      const int bit = jrow.at(i).get<int>();
      if (bit != 0 && bit != 1) {
        throw std::invalid_argument("pre-processing entries must be 0 or 1");
      }
      row |= static_cast<std::uint32_t>(bit) << i;
    }
    rows.push_back(row);
  }
  const int l = static_cast<int>(rows.size());

  std::vector<double> xi;
  if (!j.contains("distribution") ||
      (j.at("distribution").is_string() &&
       j.at("distribution").get<std::string>() == "uniform")) {
    xi.assign(target.domain_size(), 1.0 / static_cast<double>(target.domain_size()));
  } else {
    xi = j.at("distribution").get<std::vector<double>>();
  }

  std::vector<double> angles;
  if (!j.contains("angles") || (j.at("angles").is_string() &&
                                j.at("angles").get<std::string>() == "pi/2")) {
    angles.assign(l, kPi / 2.0);
  } else {
    angles = j.at("angles").get<std::vector<double>>();
  }

  NmqcGame g{j.value("name", std::string("custom")), std::move(target), l,
             std::move(rows), std::move(xi), std::move(angles),
             j.value("post_bit", 0)};
  validate_game(g);
  return g;
}

}  // namespace

NmqcGame game_from_json_text(std::string_view json_text) {
  try {
    return game_from_json(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid game JSON: ") + e.what());
  }
}

std::string game_to_json_text(const NmqcGame& game) {
  nlohmann::json j;
  j["name"] = game.name;
  j["target"] = nlohmann::json::parse(game.target.to_json_text());
  auto& rows = j["preprocess"] = nlohmann::json::array();
  for (std::uint32_t row : game.preprocess_rows) {
    nlohmann::json jrow = nlohmann::json::array();
    for (int i = 0; i <= game.arity(); ++i) {
      jrow.push_back(static_cast<int>((row >> i) & 1));
    }
    rows.push_back(std::move(jrow));
  }
  j["distribution"] = game.distribution;
  j["angles"] = game.angles;
  j["post_bit"] = game.post_bit;
  return j.dump(2);
}

NmqcGame load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open game file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return game_from_json_text(buf.str());
}

NmqcGame resolve_game(const std::string& name_or_path) {
  try {
    return standard_game(name_or_path);
  } catch (const std::invalid_argument&) {
    if (name_or_path.find('.') == std::string::npos &&
        name_or_path.find('/') == std::string::npos) {
      throw;
    }
    return load_game(name_or_path);
  }
}

}  // namespace nmqc
