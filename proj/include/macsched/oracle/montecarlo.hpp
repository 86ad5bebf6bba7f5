// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

namespace macsched::oracle {

struct McEstimate {
  double estimate = 0;
  double stderr_ = 0;  // binomial standard error
  double bound = 0;    // reference value the estimate is compared against
  std::int64_t samples = 0;
};

// `estimate,stderr,bound,samples`
std::string mc_csv_header();
std::string mc_csv_row(const McEstimate& estimate);

// Fraction of uniformly random `crashed`-subsets of M machines, `leaders` of
// them marked, that contain at least `threshold` marked machines. The bound
// column is exp(-leaders / 8).
McEstimate mc_hypergeometric_tail(std::int64_t M, std::int64_t leaders,
                                  std::int64_t crashed, std::int64_t threshold,
                                  std::int64_t samples, std::uint64_t seed);

// P[X >= threshold] for X hypergeometric(M, leaders, crashed), summed in
// log space.
double hypergeometric_tail_exact(std::int64_t M, std::int64_t leaders,
                                 std::int64_t crashed, std::int64_t threshold);

// Success rate of failure-free Mix-And-Test on M operational machines.
// Requires m / 2^(scale+1) < M <= m / 2^scale (ConfigError otherwise). The
// bound column is the exact success probability.
McEstimate mc_mix_and_test(int scale, std::int64_t L, int m, int M, int trials,
                           std::uint64_t seed);

// Exact success probability of failure-free Mix-And-Test. The number of
// lone transmissions heard determines both the coin and the number of
// tossers, so the chain is one-dimensional.
double mix_and_test_exact(int scale, std::int64_t L, int m, int M);

// Probability that exactly one of `tossers` machines transmits when each
// does so with probability 1/coin.
double lone_broadcast_probability(std::int64_t tossers, std::int64_t coin);

}  // namespace macsched::oracle
