// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "macsched/core/types.hpp"

namespace macsched::tapebb {

enum class PlanMode { Preemptive, NonPreemptive, LongJob };

std::string to_string(PlanMode mode);

struct Column {
  MachineId machine = 0;
  std::vector<TaskSpan> segments;
  int capacity = 0;  // task-units the column may hold
  int slot = 0;      // epoch round of the column's broadcast

  int units() const;
  bool operator==(const Column&) const = default;
};

// One epoch's assignment of work to the first d machines of MACHINES.
// Triangle modes: column j (1-based) holds at most j*phi units and broadcasts
// at round j*phi. Long-job mode: column k holds one whole job and broadcasts
// at the first round r >= length with r = k (mod d).
struct TrianglePlan {
  PlanMode mode = PlanMode::Preemptive;
  int d = 0;
  int phi = 1;
  std::vector<Column> columns;

  int epoch_rounds() const;
  int assigned_units() const;
  bool empty() const;  // no segments anywhere
  bool operator==(const TrianglePlan&) const = default;
};

// Fills the triangle from jobs sorted by (remaining, id): the r-th job becomes
// the base of column r, then passes over columns in descending residual
// capacity (ties by lower column) append the next job's chain prefix.
TrianglePlan pack_preemptive(const TaskTable& tasks,
                             std::span<const MachineId> machines, int d,
                             int phi = 1);

// Same sweep, whole jobs only; a job that fits no residual stays deferred.
TrianglePlan pack_nonpreemptive(const TaskTable& tasks,
                                std::span<const MachineId> machines, int d,
                                int phi);

TrianglePlan pack_longjob(const TaskTable& tasks,
                          std::span<const MachineId> machines, int d);

// Throws ProtocolViolation when the plan breaks a structural invariant
// against the task table it was packed from.
void check_plan(const TrianglePlan& plan, const TaskTable& tasks);

// One column per line: `column j machine v cap c slot s: segments`.
std::string dump(const TrianglePlan& plan);

}  // namespace macsched::tapebb
