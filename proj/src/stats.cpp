// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "nmqc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "nmqc/rng.hpp"

namespace nmqc {

namespace {

int string_parity(std::string_view outcome) {
  int p = 0;
  for (char c : outcome) p ^= (c == '1');
  return p;
}

// Inclusive Binomial(n, p) CDF, built outward from the mode so large n stays
// in range (tail entries may underflow to 0, which is harmless here).
std::vector<double> binomial_cdf(long long n, double p) {
  std::vector<double> cdf(n + 1, 0.0);
  if (p <= 0.0) {
    std::fill(cdf.begin(), cdf.end(), 1.0);
    return cdf;
  }
  if (p >= 1.0) {
    cdf[n] = 1.0;
    return cdf;
  }
  std::vector<double> pmf(n + 1, 0.0);
  const long long mode = static_cast<long long>((n + 1) * p);
  const long long m = std::min(mode, n);
  const double log_pmf_m = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) -
                           std::lgamma(n - m + 1.0) + m * std::log(p) +
                           (n - m) * std::log1p(-p);
  pmf[m] = std::exp(log_pmf_m);
  const double odds = p / (1.0 - p);
  for (long long k = m; k < n; ++k) {
    pmf[k + 1] = pmf[k] * odds * static_cast<double>(n - k) /
                 static_cast<double>(k + 1);
  }
  for (long long k = m; k > 0; --k) {
    pmf[k - 1] = pmf[k] / odds * static_cast<double>(k) /
                 static_cast<double>(n - k + 1);
  }
  double acc = 0.0;
  for (long long k = 0; k <= n; ++k) {
    acc += pmf[k];
    cdf[k] = acc;
  }
  for (double& c : cdf) c /= acc;
  cdf[n] = 1.0;
  return cdf;
}

double quantile(std::vector<double>& sorted, double q) {
  // Linear interpolation between order statistics.
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

double expectation_from_counts(const CountsTable& counts) {
  if (counts.shots < 1 || counts.counts.empty()) {
    throw std::invalid_argument("counts table is empty");
  }
  long long signed_sum = 0;
  long long total = 0;
  for (const auto& [outcome, c] : counts.counts) {
    signed_sum += string_parity(outcome) ? -c : c;
    total += c;
  }
  if (total != counts.shots) {
    throw std::invalid_argument("counts do not add up to the declared shots");
  }
  return static_cast<double>(signed_sum) / static_cast<double>(counts.shots);
}

ExpectationEstimate estimate_from_counts(const CountsTable& counts,
                                         const NmqcGame& game,
                                         std::uint32_t input_x) {
  return ExpectationEstimate{expectation_from_counts(counts), counts.shots,
                             setting_string(game, input_x), input_x};
}

BellEstimate bell_value(const NmqcGame& game,
                        const std::vector<ExpectationEstimate>& estimates) {
  validate_game(game);
  std::map<std::uint32_t, double> by_input;
  for (const auto& e : estimates) {
    by_input[e.input_x] = e.value;
  }
  const double sign_c = game.post_bit ? -1.0 : 1.0;
  double beta = 0.0;
  for (std::size_t x = 0; x < game.target.domain_size(); ++x) {
    const double xi = game.distribution[x];
    if (xi == 0.0) continue;
    const auto it = by_input.find(static_cast<std::uint32_t>(x));
    if (it == by_input.end()) {
      throw std::invalid_argument("missing expectation estimate for input " +
                                  std::to_string(x));
    }
    const double sign_f =
        game.target.value(static_cast<std::uint32_t>(x)) ? -1.0 : 1.0;
    beta += sign_f * xi * sign_c * it->second;
  }
  BellEstimate est;
  est.beta = beta;
  est.success_prob = (beta + 1.0) / 2.0;
  est.per_input = estimates;
  return est;
}

std::pair<double, double> bootstrap_ci(const std::vector<InputCounts>& raw_counts,
                                       const NmqcGame& game, int resamples,
                                       double level, std::uint64_t seed) {
  validate_game(game);
  if (resamples < 100) {
    throw std::invalid_argument("bootstrap needs at least 100 resamples");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  }

  struct Input {
    double weight;            // (-1)^(f(x)+c) xi(x)
    long long shots;
    std::vector<double> cdf;  // CDF of the even-parity count
  };
  std::vector<Input> inputs;
  std::map<std::uint32_t, const CountsTable*> provided;
  for (const auto& ic : raw_counts) {
    provided[ic.input_x] = &ic.counts;
  }
  const double sign_c = game.post_bit ? -1.0 : 1.0;
  for (std::size_t x = 0; x < game.target.domain_size(); ++x) {
    const double xi = game.distribution[x];
    if (xi == 0.0) continue;
    const auto it = provided.find(static_cast<std::uint32_t>(x));
    if (it == provided.end()) {
      throw std::invalid_argument("missing counts for input " + std::to_string(x));
    }
    const CountsTable& t = *it->second;
    if (t.shots < 1) {
      throw std::invalid_argument("degenerate counts (0 shots) for input " +
                                  std::to_string(x));
    }
    long long even = 0;
    for (const auto& [outcome, c] : t.counts) {
      if (!string_parity(outcome)) even += c;
    }
    const double p_even =
        static_cast<double>(even) / static_cast<double>(t.shots);
    const double sign_f =
        game.target.value(static_cast<std::uint32_t>(x)) ? -1.0 : 1.0;
    inputs.push_back(
        Input{sign_f * xi * sign_c, t.shots, binomial_cdf(t.shots, p_even)});
  }

  Rng rng(seed);
  std::vector<double> betas(resamples);
  for (int r = 0; r < resamples; ++r) {
    double beta = 0.0;
    for (const Input& in : inputs) {
      const double u = rng.uniform();
      const long long even =
          std::upper_bound(in.cdf.begin(), in.cdf.end(), u) - in.cdf.begin();
      const double e = 2.0 * static_cast<double>(even) /
                           static_cast<double>(in.shots) -
                       1.0;
      beta += in.weight * e;
    }
    betas[r] = beta;
  }
  std::sort(betas.begin(), betas.end());
  const double alpha = (1.0 - level) / 2.0;
  return {quantile(betas, alpha), quantile(betas, 1.0 - alpha)};
}

}  // namespace nmqc
