// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "macsched/core/types.hpp"

namespace macsched::oracle {

enum class BoundKind { Preemptive, NonPreemptive, Randomized };

std::string to_string(BoundKind kind);
BoundKind parse_bound_kind(const std::string& text);

struct BoundParams {
  int m = 1;
  std::int64_t n = 0;
  std::int64_t L = 0;
  std::int64_t alpha = 0;
  int f = 0;
  double C = 1.0;
};

BoundParams params_for(int m, const JobSet& jobs, int f, double C = 1.0);

// preemptive:    L + C (m sqrt L + m min(f, L) + m alpha)
// nonpreemptive: L + C ((L/n) m sqrt n + alpha m min(f, n))
// randomized:    C (L + m sqrt L + m alpha)
// Throws ConfigError for the nonpreemptive kind with n = 0.
double bound_eval(BoundKind kind, const BoundParams& p);

// The part of bound_eval scaled by C, evaluated at C = 1.
double bound_term(BoundKind kind, const BoundParams& p);

struct FitRun {
  Work work = 0;
  BoundParams params;
};

// Smallest C with every run under bound_eval(kind, C): the max over runs of
// (work - L) / term, or work / term for the randomized kind. Throws
// ConfigError on empty input.
double fit_constant(BoundKind kind, std::span<const FitRun> runs);

// Per-run ratios behind fit_constant.
std::vector<double> fit_ratios(BoundKind kind, std::span<const FitRun> runs);

// max / min of positive values; infinity if some value is <= 0.
double spread(std::span<const double> values);

// |{a : l_a > 2L/n}| <= n/2. Throws ConfigError for n = 0.
bool heavy_jobs_check(const JobSet& jobs);

}  // namespace macsched::oracle
