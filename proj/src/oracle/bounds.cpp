// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include "macsched/oracle/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "macsched/core/errors.hpp"

namespace macsched::oracle {

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Preemptive:
      return "pre";
    case BoundKind::NonPreemptive:
      return "nonpre";
    case BoundKind::Randomized:
      return "rand";
  }
  return "?";
}

BoundKind parse_bound_kind(const std::string& text) {
  if (text == "pre" || text == "preemptive") return BoundKind::Preemptive;
  if (text == "nonpre" || text == "nonpreemptive" || text == "non-preemptive") {
    return BoundKind::NonPreemptive;
  }
  if (text == "rand" || text == "randomized") return BoundKind::Randomized;
  throw ConfigError("unknown bound kind '" + text + "'");
}

BoundParams params_for(int m, const JobSet& jobs, int f, double C) {
  return {m, static_cast<std::int64_t>(jobs.n()), jobs.total_length(),
          jobs.max_length(), f, C};
}

double bound_term(BoundKind kind, const BoundParams& p) {
  const double m = p.m;
  const double L = static_cast<double>(p.L);
  const double alpha = static_cast<double>(p.alpha);
  switch (kind) {
    case BoundKind::Preemptive:
      return m * std::sqrt(L) + m * static_cast<double>(std::min<std::int64_t>(p.f, p.L)) +
             m * alpha;
    case BoundKind::NonPreemptive: {
      if (p.n <= 0) throw ConfigError("nonpreemptive bound needs n >= 1");
      const double n = static_cast<double>(p.n);
      return (L / n) * m * std::sqrt(n) +
             alpha * m * static_cast<double>(std::min<std::int64_t>(p.f, p.n));
    }
    case BoundKind::Randomized:
      return L + m * std::sqrt(L) + m * alpha;
  }
  return 0;
}

double bound_eval(BoundKind kind, const BoundParams& p) {
  const double term = p.C * bound_term(kind, p);
  return kind == BoundKind::Randomized ? term : static_cast<double>(p.L) + term;
}

std::vector<double> fit_ratios(BoundKind kind, std::span<const FitRun> runs) {
  std::vector<double> ratios;
  ratios.reserve(runs.size());
  for (const auto& run : runs) {
    double excess = static_cast<double>(run.work);
    if (kind != BoundKind::Randomized) excess -= static_cast<double>(run.params.L);
    ratios.push_back(excess / bound_term(kind, run.params));
  }
  return ratios;
}

double fit_constant(BoundKind kind, std::span<const FitRun> runs) {
  if (runs.empty()) throw ConfigError("fit_constant needs at least one run");
  const auto ratios = fit_ratios(kind, runs);
  return *std::max_element(ratios.begin(), ratios.end());
}

double spread(std::span<const double> values) {
  if (values.empty()) return 1.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo <= 0) return std::numeric_limits<double>::infinity();
  return *hi / *lo;
}

bool heavy_jobs_check(const JobSet& jobs) {
  const auto n = static_cast<std::int64_t>(jobs.n());
  if (n == 0) throw ConfigError("heavy_jobs_check needs n >= 1");
  // l > 2L/n  <=>  l n > 2L, kept in integers.
  std::int64_t heavy = 0;
  for (const auto& job : jobs.jobs()) {
    if (static_cast<std::int64_t>(job.length) * n > 2 * jobs.total_length()) ++heavy;
  }
  return 2 * heavy <= n;
}

}  // namespace macsched::oracle
