// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include "macsched/algorithms/view.hpp"

#include <algorithm>
#include <cmath>

#include "macsched/core/errors.hpp"

namespace macsched::algorithms {

LocalView LocalView::initial(int machine_count, const JobSet& jobs) {
  LocalView view;
  for (MachineId v = 1; v <= machine_count; ++v) view.machines.push_back(v);
  view.jobs = make_task_table(jobs);
  view.tasks = outstanding_tasks(view.jobs);
  return view;
}

void LocalView::fold(const tapebb::EpochOutcome& outcome) {
  for (const auto& span : outcome.confirmed) {
    auto it = std::lower_bound(
        jobs.begin(), jobs.end(), span.job,
        [](const JobProgress& entry, JobId key) { return entry.id < key; });
    if (it == jobs.end() || it->id != span.job || span.first != it->next) {
      throw ProtocolViolation("confirmation breaks chain order for job " +
                              std::to_string(span.job));
    }
    tasks -= span.size();
    it->next = span.last + 1;
    if (it->remaining() == 0) jobs.erase(it);
  }
  for (MachineId v : outcome.detected_crashes) {
    std::erase(machines, v);
    std::erase(leaders, v);
  }
}

void LocalView::elect(MachineId leader) {
  auto it = std::find(machines.begin(), machines.end(), leader);
  if (it == machines.end()) {
    throw ProtocolViolation("elected machine " + std::to_string(leader) +
                            " is not on MACHINES");
  }
  std::rotate(machines.begin(), it, it + 1);
  leaders.insert(leaders.begin(), leader);
}

void LocalView::append_key(std::string& key) const {
  for (MachineId v : machines) {
    key += std::to_string(v);
    key += ' ';
  }
  key += '|';
  for (const auto& entry : jobs) {
    key += std::to_string(entry.id);
    key += ':';
    key += std::to_string(entry.next);
    key += ' ';
  }
  key += '|';
  key += std::to_string(d) + ',' + std::to_string(scale) + ',' +
         std::to_string(phi) + ',' + std::to_string(coin) + '|';
  for (MachineId v : leaders) {
    key += std::to_string(v);
    key += ' ';
  }
  key += '|';
}

std::int64_t ceil_div_pow2(std::int64_t value, int exponent) {
  if (exponent >= 62) return value > 0 ? 1 : 0;
  const std::int64_t divisor = std::int64_t{1} << exponent;
  return (value + divisor - 1) / divisor;
}

std::int64_t ceil_sqrt(std::int64_t value) {
  if (value <= 0) return 0;
  auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(value)));
  while (root * root > value) --root;
  while (root * root < value) ++root;
  return root;
}

int ceil_log2(std::int64_t value) {
  int bits = 0;
  while ((std::int64_t{1} << bits) < value) ++bits;
  return bits;
}

std::int64_t triangle(std::int64_t d) { return d * (d + 1) / 2; }

}  // namespace macsched::algorithms
