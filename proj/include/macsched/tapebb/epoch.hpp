// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "macsched/core/engine.hpp"
#include "macsched/core/trace.hpp"
#include "macsched/tapebb/plan.hpp"

namespace macsched::tapebb {

struct EpochOutcome {
  std::vector<TaskSpan> confirmed;
  std::vector<MachineId> detected_crashes;
  int rounds_elapsed = 0;
  int broadcasts_heard = 0;

  bool operator==(const EpochOutcome&) const = default;
};

// Replicated execution of one plan. Every running machine holds an identical
// copy; only the column owner's intent() differs. A scheduled slot that ends
// in silence marks its owner as crashed, since nobody else may transmit then.
class EpochExecution {
 public:
  explicit EpochExecution(TrianglePlan plan);

  // Intent of `self` in the next epoch round.
  std::optional<Payload> intent(MachineId self) const;
  // Consumes the outcome of the next epoch round.
  void observe(const ChannelOutcome& outcome);

  bool finished() const { return elapsed_ >= plan_.epoch_rounds(); }
  int elapsed() const { return elapsed_; }
  const TrianglePlan& plan() const { return plan_; }
  const EpochOutcome& outcome() const { return outcome_; }

  bool operator==(const EpochExecution&) const = default;
  void append_key(std::string& key) const;

 private:
  const Column* column_at(int epoch_round) const;

  TrianglePlan plan_;
  int elapsed_ = 0;
  EpochOutcome outcome_;
};

struct EpochRun {
  EpochOutcome outcome;
  Work work = 0;
  ExecutionTrace trace;
};

using CrashPolicy = std::function<std::vector<MachineId>(const Observation&)>;

// Runs a single epoch on machines 1..machine_count through the core engine;
// machines halt once the epoch ends.
EpochRun run_epoch(const TrianglePlan& plan, int machine_count,
                   CrashPolicy crashes = {}, int crash_budget = 0);

}  // namespace macsched::tapebb
