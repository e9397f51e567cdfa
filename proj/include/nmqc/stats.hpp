// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef NMQC_STATS_HPP
#define NMQC_STATS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nmqc/game.hpp"
#include "nmqc/sim.hpp"

namespace nmqc {

struct ExpectationEstimate {
  double value = 0.0;  // parity expectation of the measured bits, in [-1, 1]
  long long shots = 0;
  std::string setting;
  std::uint32_t input_x = 0;
};

struct ConfidenceInterval {
  double low = 0.0;
  double high = 0.0;
  double level = 0.0;
};

struct BellEstimate {
  double beta = 0.0;
  double success_prob = 0.0;  // (beta + 1)/2
  std::vector<ExpectationEstimate> per_input;
  std::optional<ConfidenceInterval> ci;
};

// sum over outcomes of (-1)^parity * count / shots. Throws on empty counts.
double expectation_from_counts(const CountsTable& counts);

ExpectationEstimate estimate_from_counts(const CountsTable& counts,
                                         const NmqcGame& game,
                                         std::uint32_t input_x);

// Eq-of-the-game Bell value from per-input parity expectations; every input
// with xi(x) > 0 must be present.
BellEstimate bell_value(const NmqcGame& game,
                        const std::vector<ExpectationEstimate>& estimates);

struct InputCounts {
  std::uint32_t input_x = 0;
  CountsTable counts;
};

// Percentile bootstrap of beta. Each resample redraws every input's shots
// from its empirical distribution and recomputes beta; since beta only sees
// the counts through per-input outcome parities, the redraw is performed on
// the even-parity aggregate (binomially), which has the identical resampling
// distribution at O(1) cost per draw. Deterministic under a fixed seed.
std::pair<double, double> bootstrap_ci(const std::vector<InputCounts>& raw_counts,
                                       const NmqcGame& game, int resamples,
                                       double level, std::uint64_t seed = 0);

}  // namespace nmqc

#endif  // NMQC_STATS_HPP
