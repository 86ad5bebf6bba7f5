// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "macsched/core/types.hpp"

namespace macsched {

// Counter-based coins: a toss depends only on (seed, machine, round), never
// on how many draws happened before it.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t coin_hash(std::uint64_t seed, MachineId machine,
                                  Round round) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ static_cast<std::uint64_t>(machine));
  return mix64(h ^ static_cast<std::uint64_t>(round));
}

inline double unit_uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Heads with probability 1/denominator.
inline bool toss(std::uint64_t seed, MachineId machine, Round round,
                 std::int64_t denominator) {
  if (denominator <= 1) return true;
  return unit_uniform(coin_hash(seed, machine, round)) <
         1.0 / static_cast<double>(denominator);
}

}  // namespace macsched
