// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include "macsched/oracle/montecarlo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "macsched/algorithms/randomized.hpp"
#include "macsched/core/errors.hpp"
#include "macsched/core/rng.hpp"

namespace macsched::oracle {

namespace {

std::string format_double(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return ec == std::errc() ? std::string(buffer, end) : std::string("nan");
}

McEstimate binomial(std::int64_t hits, std::int64_t samples, double bound) {
  McEstimate est;
  est.samples = samples;
  est.bound = bound;
  if (samples > 0) {
    est.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    est.stderr_ = std::sqrt(est.estimate * (1 - est.estimate) /
                            static_cast<double>(samples));
  }
  return est;
}

double log_choose(std::int64_t n, std::int64_t k) {
  return std::lgamma(static_cast<double>(n + 1)) -
         std::lgamma(static_cast<double>(k + 1)) -
         std::lgamma(static_cast<double>(n - k + 1));
}

}  // namespace

std::string mc_csv_header() { return "estimate,stderr,bound,samples"; }

std::string mc_csv_row(const McEstimate& e) {
  return format_double(e.estimate) + ',' + format_double(e.stderr_) + ',' +
         format_double(e.bound) + ',' + std::to_string(e.samples);
}

McEstimate mc_hypergeometric_tail(std::int64_t M, std::int64_t leaders,
                                  std::int64_t crashed, std::int64_t threshold,
                                  std::int64_t samples, std::uint64_t seed) {
  if (M < 0 || leaders < 0 || crashed < 0 || leaders > M || crashed > M) {
    throw ConfigError("hypergeometric tail needs leaders, crashed <= M");
  }
  if (samples < 1) throw ConfigError("samples must be >= 1");
  const double bound = std::exp(-static_cast<double>(leaders) / 8.0);
  if (threshold > leaders) return binomial(0, samples, bound);

  // Machines 0..leaders-1 are the marked ones; a partial Fisher-Yates
  // shuffle draws the crashed set.
  std::mt19937_64 gen(seed);
  std::vector<std::int64_t> pool(static_cast<std::size_t>(M));
  std::iota(pool.begin(), pool.end(), 0);
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    std::int64_t marked = 0;
    for (std::int64_t k = 0; k < crashed; ++k) {
      std::uniform_int_distribution<std::int64_t> pick(k, M - 1);
      std::swap(pool[k], pool[pick(gen)]);
      if (pool[k] < leaders) ++marked;
    }
    if (marked >= threshold) ++hits;
  }
  return binomial(hits, samples, bound);
}

double hypergeometric_tail_exact(std::int64_t M, std::int64_t leaders,
                                 std::int64_t crashed, std::int64_t threshold) {
  const std::int64_t hi = std::min(leaders, crashed);
  const std::int64_t lo = std::max<std::int64_t>(threshold, crashed - (M - leaders));
  double total = 0;
  const double denom = log_choose(M, crashed);
  for (std::int64_t x = std::max<std::int64_t>(lo, 0); x <= hi; ++x) {
    total += std::exp(log_choose(leaders, x) + log_choose(M - leaders, crashed - x) - denom);
  }
  return std::min(total, 1.0);
}

double lone_broadcast_probability(std::int64_t tossers, std::int64_t coin) {
  if (tossers <= 0) return 0;
  if (coin <= 1) return tossers == 1 ? 1.0 : 0.0;
  const double q = 1.0 / static_cast<double>(coin);
  return static_cast<double>(tossers) * q *
         std::pow(1 - q, static_cast<double>(tossers - 1));
}

double mix_and_test_exact(int scale, std::int64_t L, int m, int M) {
  using algorithms::ceil_div_pow2;
  const std::int64_t coin0 = std::max<std::int64_t>(ceil_div_pow2(m, scale), 1);
  const auto threshold = algorithms::ceil_sqrt(L);
  const std::int64_t rounds = threshold + algorithms::ceil_log2(m);
  // dist[h] = P[h lone transmissions heard so far]
  std::vector<double> dist(static_cast<std::size_t>(rounds + 1), 0.0);
  dist[0] = 1.0;
  for (std::int64_t r = 0; r < rounds; ++r) {
    std::vector<double> next(dist.size(), 0.0);
    for (std::int64_t h = 0; h <= r; ++h) {
      if (dist[h] == 0) continue;
      const double p = lone_broadcast_probability(
          M - h, std::max<std::int64_t>(coin0 - h, 1));
      next[h] += dist[h] * (1 - p);
      next[h + 1] += dist[h] * p;
    }
    dist = std::move(next);
  }
  double success = 0;
  for (std::int64_t h = threshold; h <= rounds; ++h) success += dist[h];
  return std::min(success, 1.0);
}

McEstimate mc_mix_and_test(int scale, std::int64_t L, int m, int M, int trials,
                           std::uint64_t seed) {
  // M in (m / 2^(scale+1), m / 2^scale], compared as 2^(scale+1) M > m and
  // 2^scale M <= m.
  const bool inside = scale >= 0 && scale < 62 && M >= 1 &&
                      (static_cast<std::int64_t>(M) << (scale + 1)) > m &&
                      (static_cast<std::int64_t>(M) << scale) <= m;
  if (!inside) {
    throw ConfigError("operational count " + std::to_string(M) +
                      " outside (m/2^(i+1), m/2^i] for m=" + std::to_string(m) +
                      ", i=" + std::to_string(scale));
  }
  if (trials < 1) throw ConfigError("trials must be >= 1");
  std::int64_t hits = 0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = mix64(seed + static_cast<std::uint64_t>(t));
    if (algorithms::run_mix_and_test(scale, L, m, M, trial_seed).result) ++hits;
  }
  return binomial(hits, trials, mix_and_test_exact(scale, L, m, M));
}

}  // namespace macsched::oracle
