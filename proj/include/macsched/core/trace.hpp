// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "macsched/core/types.hpp"

namespace macsched {

struct MachineStatus {
  enum class State { Running, Halted, Crashed };

  State state = State::Running;
  Round at = 0;  // halt boundary, or the round in which the crash happened

  bool running() const { return state == State::Running; }
  bool operator==(const MachineStatus&) const = default;
};

struct RoundRecord {
  Round round = 0;
  std::vector<TransmissionIntent> intents;  // as computed, before crashes
  std::vector<MachineId> crashes;
  ChannelOutcome outcome;
  std::vector<MachineId> halts;  // halted at the boundary closing this round
  Work work = 0;                 // machines that earned this round

  bool operator==(const RoundRecord&) const = default;
};

// Round-by-round record of one execution. r_0 = 0.
struct ExecutionTrace {
  int machine_count = 0;
  std::vector<MachineId> initial_halts;  // halted at boundary 0
  std::vector<RoundRecord> rounds;
  std::vector<MachineStatus> status;  // index = machine id - 1

  bool complete() const;
  int crash_count() const;
  bool operator==(const ExecutionTrace&) const = default;
};

// Sum over machines of r_v - r_0. A machine crashed in round r contributes
// r - 1 (the crashed step is destroyed). Throws IncompleteTrace if any
// machine is still running.
Work total_work(const ExecutionTrace& trace);

// Sum of the per-round ledger; equals total_work for complete traces.
Work ledger_work(const ExecutionTrace& trace);

// Line-delimited `round,event_kind,machine,detail` export.
std::string export_trace(const ExecutionTrace& trace);

struct ReliabilityVerdict {
  bool reliable = false;
  std::vector<JobId> unperformed_jobs;
  std::vector<MachineId> non_halting_machines;

  bool operator==(const ReliabilityVerdict&) const = default;
};

// Incremental view of which work has been announced on the channel.
// Preemptive mode accepts spans that extend the confirmed chain prefix;
// non-preemptive mode only accepts whole-job spans.
class ConfirmationTracker {
 public:
  ConfirmationTracker(const JobSet& jobs, Mode mode);

  void observe(const ChannelOutcome& outcome);
  bool performed(JobId job) const;
  int confirmed_prefix(JobId job) const;
  std::vector<JobId> unperformed() const;

  bool operator==(const ConfirmationTracker&) const = default;
  void append_key(std::string& key) const;

 private:
  Mode mode_;
  std::map<JobId, int> length_;
  std::map<JobId, int> prefix_;
};

ReliabilityVerdict verify_reliability(const ExecutionTrace& trace,
                                      const JobSet& jobs, Mode mode);

}  // namespace macsched
