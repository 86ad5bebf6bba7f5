// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include "macsched/core/trace.hpp"

#include <algorithm>

#include "macsched/core/errors.hpp"

namespace macsched {

bool ExecutionTrace::complete() const {
  return std::none_of(status.begin(), status.end(),
                      [](const MachineStatus& s) { return s.running(); });
}

int ExecutionTrace::crash_count() const {
  int count = 0;
  for (const auto& record : rounds) count += static_cast<int>(record.crashes.size());
  return count;
}

Work total_work(const ExecutionTrace& trace) {
  Work total = 0;
  for (std::size_t k = 0; k < trace.status.size(); ++k) {
    const auto& s = trace.status[k];
    switch (s.state) {
      case MachineStatus::State::Running:
        throw IncompleteTrace("machine " + std::to_string(k + 1) +
                              " has no terminal event");
      case MachineStatus::State::Halted:
        total += s.at;
        break;
      case MachineStatus::State::Crashed:
        total += s.at - 1;
        break;
    }
  }
  return total;
}

Work ledger_work(const ExecutionTrace& trace) {
  Work total = 0;
  for (const auto& record : trace.rounds) total += record.work;
  return total;
}

std::string export_trace(const ExecutionTrace& trace) {
  std::string out;
  auto line = [&out](Round r, const char* kind, const std::string& machine,
                     const std::string& detail) {
    out += std::to_string(r);
    out += ',';
    out += kind;
    out += ',';
    out += machine;
    out += ',';
    out += detail;
    out += '\n';
  };
  for (MachineId v : trace.initial_halts) line(0, "halt", std::to_string(v), "");
  for (const auto& record : trace.rounds) {
    for (const auto& intent : record.intents) {
      line(record.round, "intent", std::to_string(intent.sender),
           render(intent.payload));
    }
    for (MachineId v : record.crashes) {
      line(record.round, "crash", std::to_string(v), "");
    }
    if (record.outcome.delivered) {
      line(record.round, "deliver", std::to_string(record.outcome.delivered->sender),
           render(record.outcome.delivered->payload));
    } else {
      line(record.round, "silence", "", "");
    }
    for (MachineId v : record.halts) {
      line(record.round, "halt", std::to_string(v), "");
    }
  }
  return out;
}

ConfirmationTracker::ConfirmationTracker(const JobSet& jobs, Mode mode)
    : mode_(mode) {
  for (const auto& job : jobs.jobs()) {
    length_[job.id] = job.length;
    prefix_[job.id] = 0;
  }
}

void ConfirmationTracker::observe(const ChannelOutcome& outcome) {
  if (!outcome.delivered) return;
  const Payload& payload = outcome.delivered->payload;
  if (payload.kind == PayloadKind::AllDone) {
    // The announcer performed every task locally before broadcasting.
    for (auto& [job, prefix] : prefix_) prefix = length_.at(job);
    return;
  }
  if (payload.kind != PayloadKind::Confirm) return;
  for (const auto& span : payload.spans) {
    auto it = prefix_.find(span.job);
    if (it == prefix_.end()) continue;
    const int length = length_.at(span.job);
    if (span.first < 1 || span.last > length || span.first > span.last) continue;
    if (mode_ == Mode::NonPreemptive) {
      if (span.first == 1 && span.last == length) it->second = length;
    } else if (span.first <= it->second + 1) {
      it->second = std::max(it->second, span.last);
    }
  }
}

bool ConfirmationTracker::performed(JobId job) const {
  return prefix_.at(job) == length_.at(job);
}

int ConfirmationTracker::confirmed_prefix(JobId job) const {
  return prefix_.at(job);
}

std::vector<JobId> ConfirmationTracker::unperformed() const {
  std::vector<JobId> out;
  for (const auto& [job, prefix] : prefix_) {
    if (prefix != length_.at(job)) out.push_back(job);
  }
  return out;
}

void ConfirmationTracker::append_key(std::string& key) const {
  for (const auto& [job, prefix] : prefix_) {
    key += std::to_string(prefix);
    key += ',';
  }
  key += '|';
}

ReliabilityVerdict verify_reliability(const ExecutionTrace& trace,
                                      const JobSet& jobs, Mode mode) {
  ConfirmationTracker tracker(jobs, mode);
  for (const auto& record : trace.rounds) tracker.observe(record.outcome);
  ReliabilityVerdict verdict;
  verdict.unperformed_jobs = tracker.unperformed();
  for (std::size_t k = 0; k < trace.status.size(); ++k) {
    if (trace.status[k].running()) {
      verdict.non_halting_machines.push_back(static_cast<MachineId>(k + 1));
    }
  }
  verdict.reliable =
      verdict.unperformed_jobs.empty() && verdict.non_halting_machines.empty();
  return verdict;
}

}  // namespace macsched
