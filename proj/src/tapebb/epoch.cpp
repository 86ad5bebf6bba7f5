// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include "macsched/tapebb/epoch.hpp"

#include <utility>

#include "macsched/core/errors.hpp"

namespace macsched::tapebb {

EpochExecution::EpochExecution(TrianglePlan plan) : plan_(std::move(plan)) {}

const Column* EpochExecution::column_at(int epoch_round) const {
  for (const auto& column : plan_.columns) {
    if (column.slot == epoch_round && !column.segments.empty()) return &column;
  }
  return nullptr;
}

std::optional<Payload> EpochExecution::intent(MachineId self) const {
  const Column* column = column_at(elapsed_ + 1);
  if (column == nullptr || column->machine != self) return std::nullopt;
  return Payload{PayloadKind::Confirm, column->segments};
}

void EpochExecution::observe(const ChannelOutcome& outcome) {
  const int t = ++elapsed_;
  outcome_.rounds_elapsed = t;
  const Column* column = column_at(t);
  if (column == nullptr) {
    if (outcome.delivered) {
      throw ProtocolViolation("epoch round " + std::to_string(t) +
                              ": message from unscheduled machine " +
                              std::to_string(outcome.delivered->sender));
    }
    return;
  }
  if (outcome.silent()) {
    outcome_.detected_crashes.push_back(column->machine);
    return;
  }
  const Delivered& heard = *outcome.delivered;
  if (heard.sender != column->machine ||
      heard.payload != Payload{PayloadKind::Confirm, column->segments}) {
    throw ProtocolViolation("epoch round " + std::to_string(t) +
                            ": unexpected broadcast from machine " +
                            std::to_string(heard.sender));
  }
  ++outcome_.broadcasts_heard;
  outcome_.confirmed.insert(outcome_.confirmed.end(), column->segments.begin(),
                            column->segments.end());
}

void EpochExecution::append_key(std::string& key) const {
  // The plan is a function of the replicated view it was packed from, so the
  // progress counters identify the execution state.
  key += 'E';
  key += std::to_string(elapsed_);
  key += ',';
  key += std::to_string(outcome_.broadcasts_heard);
  for (MachineId v : outcome_.detected_crashes) {
    key += ',';
    key += std::to_string(v);
  }
  key += dump(plan_);
}

namespace {

class EpochProcess {
 public:
  EpochProcess(MachineId self, const TrianglePlan& plan)
      : self_(self), execution_(plan) {}

  bool halted() const { return execution_.finished(); }
  std::optional<Payload> intent(Round) const { return execution_.intent(self_); }
  void observe(Round, const ChannelOutcome& outcome) {
    execution_.observe(outcome);
  }
  const EpochExecution& execution() const { return execution_; }

 private:
  MachineId self_;
  EpochExecution execution_;
};

}  // namespace

EpochRun run_epoch(const TrianglePlan& plan, int machine_count,
                   CrashPolicy crashes, int crash_budget) {
  if (machine_count < 1) throw std::invalid_argument("need at least one machine");
  for (const auto& column : plan.columns) {
    if (column.machine < 1 || column.machine > machine_count) {
      throw std::invalid_argument("plan references machine outside 1..m");
    }
  }
  std::vector<EpochProcess> processes;
  for (MachineId v = 1; v <= machine_count; ++v) processes.emplace_back(v, plan);
  Engine<EpochProcess> engine(std::move(processes), crash_budget,
                              plan.epoch_rounds());
  if (crashes) {
    engine.run(crashes);
  } else {
    engine.run();
  }

  EpochRun result;
  result.work = engine.work();
  for (MachineId v = 1; v <= machine_count; ++v) {
    if (engine.status(v).state != MachineStatus::State::Crashed) {
      result.outcome = engine.process(v).execution().outcome();
      break;
    }
  }
  result.trace = std::move(engine).take_trace();
  return result;
}

}  // namespace macsched::tapebb
