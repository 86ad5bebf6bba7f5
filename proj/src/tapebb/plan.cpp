// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include "macsched/tapebb/plan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "macsched/core/errors.hpp"

namespace macsched::tapebb {

std::string to_string(PlanMode mode) {
  switch (mode) {
    case PlanMode::Preemptive:
      return "preemptive";
    case PlanMode::NonPreemptive:
      return "nonpreemptive";
    case PlanMode::LongJob:
      return "longjob";
  }
  return "?";
}

int Column::units() const {
  int total = 0;
  for (const auto& s : segments) total += s.size();
  return total;
}

int TrianglePlan::epoch_rounds() const {
  if (mode != PlanMode::LongJob) return d * phi;
  int rounds = 0;
  for (const auto& c : columns) rounds = std::max(rounds, c.slot);
  return rounds;
}

int TrianglePlan::assigned_units() const {
  int total = 0;
  for (const auto& c : columns) total += c.units();
  return total;
}

bool TrianglePlan::empty() const {
  return std::all_of(columns.begin(), columns.end(),
                     [](const Column& c) { return c.segments.empty(); });
}

namespace {

std::vector<JobProgress> sorted_outstanding(const TaskTable& tasks) {
  std::vector<JobProgress> jobs;
  for (const auto& entry : tasks) {
    if (entry.remaining() > 0) jobs.push_back(entry);
  }
  std::sort(jobs.begin(), jobs.end(),
            [](const JobProgress& a, const JobProgress& b) {
              if (a.remaining() != b.remaining()) {
                return a.remaining() < b.remaining();
              }
              return a.id < b.id;
            });
  return jobs;
}

void require_columns(std::span<const MachineId> machines, int d) {
  if (d < 1) throw std::invalid_argument("epoch length d must be >= 1");
  if (static_cast<std::size_t>(d) > machines.size()) {
    throw std::invalid_argument("epoch length d=" + std::to_string(d) +
                                " exceeds the " +
                                std::to_string(machines.size()) +
                                " machines available");
  }
}

TrianglePlan pack_triangle(const TaskTable& tasks,
                           std::span<const MachineId> machines, int d, int phi,
                           bool whole_jobs) {
  require_columns(machines, d);
  if (phi < 1) throw std::invalid_argument("phase length must be >= 1");

  TrianglePlan plan;
  plan.mode = whole_jobs ? PlanMode::NonPreemptive : PlanMode::Preemptive;
  plan.d = d;
  plan.phi = phi;
  for (int j = 1; j <= d; ++j) {
    plan.columns.push_back({machines[j - 1], {}, j * phi, j * phi});
  }

  const auto jobs = sorted_outstanding(tasks);
  std::size_t cursor = 0;  // jobs are always taken in sorted order
  std::vector<int> residual(d);
  for (int j = 0; j < d; ++j) residual[j] = plan.columns[j].capacity;

  // The next job fits when prefixes are allowed or its whole length fits;
  // if the shortest remaining job does not fit, no other job does.
  auto pick = [&](int room) -> std::optional<std::size_t> {
    if (cursor >= jobs.size()) return std::nullopt;
    if (whole_jobs && jobs[cursor].remaining() > room) return std::nullopt;
    return cursor;
  };
  auto place = [&](int column, std::size_t k) {
    const auto& job = jobs[k];
    const int units = std::min(job.remaining(), residual[column]);
    plan.columns[column].segments.push_back(
        {job.id, job.next, job.next + units - 1});
    residual[column] -= units;
    ++cursor;
  };

  for (int j = 0; j < d; ++j) {
    if (auto k = pick(residual[j])) place(j, *k);
  }

  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<int> order;
    for (int j = 0; j < d; ++j) {
      if (residual[j] > 0) order.push_back(j);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return residual[a] > residual[b]; });
    for (int j : order) {
      if (residual[j] == 0) continue;
      if (auto k = pick(residual[j])) {
        place(j, *k);
        progress = true;
      }
    }
  }
  return plan;
}

}  // namespace

TrianglePlan pack_preemptive(const TaskTable& tasks,
                             std::span<const MachineId> machines, int d,
                             int phi) {
  return pack_triangle(tasks, machines, d, phi, false);
}

TrianglePlan pack_nonpreemptive(const TaskTable& tasks,
                                std::span<const MachineId> machines, int d,
                                int phi) {
  return pack_triangle(tasks, machines, d, phi, true);
}

TrianglePlan pack_longjob(const TaskTable& tasks,
                          std::span<const MachineId> machines, int d) {
  const auto jobs = sorted_outstanding(tasks);
  if (jobs.empty()) throw std::invalid_argument("long-job epoch needs jobs");
  require_columns(machines, d);
  if (static_cast<std::size_t>(d) > jobs.size()) {
    throw std::invalid_argument("long-job epoch: d exceeds the job count");
  }
  TrianglePlan plan;
  plan.mode = PlanMode::LongJob;
  plan.d = d;
  plan.phi = 1;
  for (int k = 1; k <= d; ++k) {
    const auto& job = jobs[k - 1];
    const int length = job.remaining();
    const int slot = length + (((k - length) % d) + d) % d;
    plan.columns.push_back(
        {machines[k - 1], {{job.id, job.next, job.length}}, length, slot});
  }
  return plan;
}

void check_plan(const TrianglePlan& plan, const TaskTable& tasks) {
  std::map<JobId, JobProgress> by_id;
  for (const auto& entry : tasks) by_id[entry.id] = entry;
  std::map<JobId, int> owner;
  std::vector<int> slots;
  for (std::size_t j = 0; j < plan.columns.size(); ++j) {
    const auto& column = plan.columns[j];
    if (column.units() > column.capacity) {
      throw ProtocolViolation("column " + std::to_string(j + 1) +
                              " exceeds its capacity");
    }
    if (plan.mode != PlanMode::LongJob &&
        column.capacity != static_cast<int>(j + 1) * plan.phi) {
      throw ProtocolViolation("column capacity is not j*phi");
    }
    if (!column.segments.empty()) slots.push_back(column.slot);
    for (const auto& segment : column.segments) {
      auto it = by_id.find(segment.job);
      if (it == by_id.end()) throw ProtocolViolation("segment of unknown job");
      if (segment.first != it->second.next || segment.last > it->second.length ||
          segment.first > segment.last) {
        throw ProtocolViolation("segment is not an outstanding chain prefix");
      }
      if (plan.mode != PlanMode::Preemptive && segment.last != it->second.length) {
        throw ProtocolViolation("whole-job plan holds a partial job");
      }
      if (!owner.emplace(segment.job, static_cast<int>(j)).second) {
        throw ProtocolViolation("job spans two columns or repeats");
      }
    }
  }
  std::sort(slots.begin(), slots.end());
  if (std::adjacent_find(slots.begin(), slots.end()) != slots.end()) {
    throw ProtocolViolation("two columns share a broadcast slot");
  }
}

std::string dump(const TrianglePlan& plan) {
  std::string out = "plan " + to_string(plan.mode) + " d=" +
                    std::to_string(plan.d) + " phi=" + std::to_string(plan.phi) +
                    " rounds=" + std::to_string(plan.epoch_rounds()) + '\n';
  for (std::size_t j = 0; j < plan.columns.size(); ++j) {
    const auto& c = plan.columns[j];
    out += "column " + std::to_string(j + 1) + " machine " +
           std::to_string(c.machine) + " cap " + std::to_string(c.capacity) +
           " slot " + std::to_string(c.slot) + ":";
    for (const auto& s : c.segments) {
      out += ' ' + std::to_string(s.job) + '[' + std::to_string(s.first) + '-' +
             std::to_string(s.last) + ']';
    }
    out += '\n';
  }
  return out;
}

}  // namespace macsched::tapebb
