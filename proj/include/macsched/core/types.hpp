// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace macsched {

using MachineId = int;  // 1-based
using JobId = int;
using Round = std::int64_t;  // 1-based; round 0 is the start boundary
using Work = std::int64_t;

enum class Mode { Preemptive, NonPreemptive };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct JobSpec {
  JobId id = 0;
  int length = 1;

  bool operator==(const JobSpec&) const = default;
};

// Immutable catalog of jobs. Construction validates lengths and ids.
class JobSet {
 public:
  JobSet() = default;
  explicit JobSet(std::vector<JobSpec> jobs);
  static JobSet from_lengths(std::span<const int> lengths);

  const std::vector<JobSpec>& jobs() const { return jobs_; }
  int n() const { return static_cast<int>(jobs_.size()); }
  std::int64_t total_length() const { return total_; }
  int max_length() const { return alpha_; }
  const JobSpec* find(JobId id) const;
  int length_of(JobId id) const;

  bool operator==(const JobSet&) const = default;

 private:
  std::vector<JobSpec> jobs_;  // sorted by id
  std::int64_t total_ = 0;
  int alpha_ = 0;
};

// Contiguous run of tasks [first, last] of one job's chain.
struct TaskSpan {
  JobId job = 0;
  int first = 1;
  int last = 1;

  int size() const { return last - first + 1; }
  bool operator==(const TaskSpan&) const = default;
};

// Outstanding suffix of one job's chain: tasks next..length remain.
struct JobProgress {
  JobId id = 0;
  int length = 1;
  int next = 1;

  int remaining() const { return length - next + 1; }
  bool operator==(const JobProgress&) const = default;
};

using TaskTable = std::vector<JobProgress>;

TaskTable make_task_table(const JobSet& jobs);
std::int64_t outstanding_tasks(const TaskTable& table);

enum class PayloadKind { Confirm, Elect, AllDone };

struct Payload {
  PayloadKind kind = PayloadKind::Confirm;
  std::vector<TaskSpan> spans;  // Confirm only

  bool operator==(const Payload&) const = default;
};

std::string render(const Payload& payload);

struct TransmissionIntent {
  MachineId sender = 0;
  Payload payload;

  bool operator==(const TransmissionIntent&) const = default;
};

struct Delivered {
  MachineId sender = 0;
  Payload payload;

  bool operator==(const Delivered&) const = default;
};

// Silence when no message, or when several collide.
struct ChannelOutcome {
  std::optional<Delivered> delivered;

  bool silent() const { return !delivered.has_value(); }
  bool operator==(const ChannelOutcome&) const = default;
};

ChannelOutcome resolve_channel(std::span<const TransmissionIntent> intents);

}  // namespace macsched
