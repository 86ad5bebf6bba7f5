// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "macsched/core/types.hpp"
#include "macsched/tapebb/epoch.hpp"

namespace macsched::algorithms {

// Replicated algorithm state. Every running machine holds an equal copy at
// each round boundary, since it changes only through channel outcomes.
struct LocalView {
  std::vector<MachineId> machines;  // believed operational, in list order
  TaskTable jobs;                   // outstanding, sorted by id
  std::int64_t tasks = 0;           // sum of outstanding chain suffixes
  int d = 0;
  int scale = 0;  // i
  int phi = 1;
  std::vector<MachineId> leaders;  // current election, most recent first
  std::int64_t coin = 0;

  static LocalView initial(int machine_count, const JobSet& jobs);

  bool done() const { return jobs.empty(); }
  void fold(const tapebb::EpochOutcome& outcome);
  void elect(MachineId leader);

  bool operator==(const LocalView&) const = default;
  void append_key(std::string& key) const;
};

// Integer helpers shared by the schedulers.
std::int64_t ceil_div_pow2(std::int64_t value, int exponent);
std::int64_t ceil_sqrt(std::int64_t value);
int ceil_log2(std::int64_t value);
std::int64_t triangle(std::int64_t d);  // d(d+1)/2

}  // namespace macsched::algorithms
