// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "macsched/algorithms/scheduler.hpp"

namespace macsched::oracle {

class SearchLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchOptions {
  std::uint64_t node_cap = 2'000'000;
  // Merge adversary choices that lead to the same engine state.
  bool memoize = true;
};

struct SearchResult {
  Work max_work = 0;
  bool all_reliable = true;
  std::uint64_t nodes = 0;   // expanded round boundaries
  std::uint64_t leaves = 0;  // complete traces reached (merged ones count once)
};

// Explores every adaptive crash strategy: at each round, after seeing the
// intents, any subset of running machines within the remaining budget may
// crash. Only deterministic schedulers are accepted. Throws
// SearchLimitExceeded past options.node_cap.
SearchResult exhaustive_worst_case(algorithms::Algorithm algorithm,
                                   int machine_count, const JobSet& jobs, int f,
                                   SearchOptions options = {});

// Every fixed schedule of at most f crashes (distinct machines, rounds in
// 1..horizon) run against each seed. horizon = 0 picks the failure-free
// length of the first seed plus 2.
SearchResult enumerate_schedules(algorithms::Algorithm algorithm,
                                 int machine_count, const JobSet& jobs, int f,
                                 std::span<const std::uint64_t> seeds,
                                 Round horizon = 0);

}  // namespace macsched::oracle
