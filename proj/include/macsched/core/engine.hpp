// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <concepts>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "macsched/core/errors.hpp"
#include "macsched/core/trace.hpp"
#include "macsched/core/types.hpp"

namespace macsched {

// What an adversary may look at before choosing this round's crashes.
struct Observation {
  const ExecutionTrace& history;
  Round round = 0;
  std::span<const TransmissionIntent> intents;
  std::span<const MachineStatus> status;
  int remaining_budget = 0;
};

// A per-machine step function. intent() is queried once per round while the
// machine runs; observe() receives the channel outcome of that round.
template <class P>
concept MachineProcess =
    std::copyable<P> &&
    requires(P p, const P cp, Round r, const ChannelOutcome& outcome) {
      { cp.halted() } -> std::convertible_to<bool>;
      { cp.intent(r) } -> std::same_as<std::optional<Payload>>;
      p.observe(r, outcome);
    };

// Round-synchronous executor. Values are copyable so that search oracles
// can branch on adversary choices.
template <MachineProcess P>
class Engine {
 public:
  Engine(std::vector<P> processes, int crash_budget, Round round_limit)
      : processes_(std::move(processes)),
        budget_(crash_budget),
        round_limit_(round_limit) {
    trace_.machine_count = static_cast<int>(processes_.size());
    trace_.status.assign(processes_.size(), MachineStatus{});
    for (std::size_t k = 0; k < processes_.size(); ++k) {
      if (processes_[k].halted()) {
        trace_.status[k] = {MachineStatus::State::Halted, 0};
        trace_.initial_halts.push_back(static_cast<MachineId>(k + 1));
      }
    }
  }

  bool finished() const {
    return std::none_of(trace_.status.begin(), trace_.status.end(),
                        [](const MachineStatus& s) { return s.running(); });
  }

  Round round() const { return round_; }
  Work work() const { return work_; }
  int remaining_budget() const { return budget_ - crashes_; }
  const ExecutionTrace& trace() const { return trace_; }
  ExecutionTrace take_trace() && { return std::move(trace_); }
  const std::vector<P>& processes() const { return processes_; }
  const P& process(MachineId id) const { return processes_.at(id - 1); }
  const MachineStatus& status(MachineId id) const {
    return trace_.status.at(id - 1);
  }

  // Step 1: collect this round's intents from every running machine.
  const std::vector<TransmissionIntent>& begin_round() {
    if (!pending_) {
      if (round_ + 1 > round_limit_) {
        throw RoundLimitExceeded("round limit " + std::to_string(round_limit_) +
                                 " exceeded");
      }
      std::vector<TransmissionIntent> intents;
      for (std::size_t k = 0; k < processes_.size(); ++k) {
        if (!trace_.status[k].running()) continue;
        if (auto payload = processes_[k].intent(round_ + 1)) {
          intents.push_back({static_cast<MachineId>(k + 1), std::move(*payload)});
        }
      }
      pending_ = std::move(intents);
    }
    return *pending_;
  }

  Observation observe() {
    const auto& intents = begin_round();
    return Observation{trace_, round_ + 1, intents, trace_.status,
                       remaining_budget()};
  }

  // Steps 3-7 for the crash set chosen by the adversary.
  void commit_round(std::vector<MachineId> crashes) {
    begin_round();
    const Round r = round_ + 1;
    std::sort(crashes.begin(), crashes.end());
    if (std::adjacent_find(crashes.begin(), crashes.end()) != crashes.end()) {
      throw ProtocolViolation("adversary crashed a machine twice");
    }
    if (static_cast<int>(crashes.size()) > remaining_budget()) {
      throw ProtocolViolation("adversary exceeded its crash budget");
    }
    for (MachineId v : crashes) {
      if (v < 1 || v > trace_.machine_count || !trace_.status[v - 1].running()) {
        throw ProtocolViolation("adversary crashed machine " +
                                std::to_string(v) + " which is not running");
      }
    }

    RoundRecord record;
    record.round = r;
    record.intents = std::move(*pending_);
    pending_.reset();
    record.crashes = crashes;
    for (MachineId v : crashes) {
      trace_.status[v - 1] = {MachineStatus::State::Crashed, r};
    }
    crashes_ += static_cast<int>(crashes.size());

    std::vector<TransmissionIntent> surviving;
    for (const auto& intent : record.intents) {
      if (trace_.status[intent.sender - 1].running()) surviving.push_back(intent);
    }
    record.outcome = resolve_channel(surviving);

    for (std::size_t k = 0; k < processes_.size(); ++k) {
      if (!trace_.status[k].running()) continue;
      processes_[k].observe(r, record.outcome);
      ++record.work;
    }
    work_ += record.work;

    for (std::size_t k = 0; k < processes_.size(); ++k) {
      if (trace_.status[k].running() && processes_[k].halted()) {
        trace_.status[k] = {MachineStatus::State::Halted, r};
        record.halts.push_back(static_cast<MachineId>(k + 1));
      }
    }
    trace_.rounds.push_back(std::move(record));
    round_ = r;
  }

  // One full round with an adversary callable: Observation -> crash set.
  template <class Policy>
  void advance_round(Policy&& decide) {
    Observation obs = observe();
    commit_round(decide(obs));
  }

  template <class Policy>
  void run(Policy&& decide) {
    while (!finished()) advance_round(decide);
  }

  void run() {
    run([](const Observation&) { return std::vector<MachineId>{}; });
  }

 private:
  std::vector<P> processes_;
  int budget_ = 0;
  int crashes_ = 0;
  Round round_limit_ = 0;
  Round round_ = 0;
  Work work_ = 0;
  ExecutionTrace trace_;
  std::optional<std::vector<TransmissionIntent>> pending_;
};

}  // namespace macsched
