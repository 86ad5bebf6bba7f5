// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "macsched/core/types.hpp"

namespace macsched::harness {

// `unit:n`, `equal:n,l`, `one_long:n,alpha`, `uniform:n,lo,hi`, or an
// explicit `lengths:l1,l2,...`.
struct JobsSpec {
  enum class Kind { Unit, Equal, OneLong, Uniform, Lengths };
  Kind kind = Kind::Unit;
  std::vector<int> params;

  std::string text() const;
  bool operator==(const JobsSpec&) const = default;
};

JobsSpec parse_jobs_spec(const std::string& text);

// Ids run 1..n in generation order; only the uniform kind reads the seed.
// Throws ConfigError for n < 1, lengths < 1 or lo > hi.
JobSet generate_jobs(const JobsSpec& spec, std::uint64_t seed);

}  // namespace macsched::harness
