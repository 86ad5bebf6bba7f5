// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include "macsched/algorithms/randomized.hpp"

#include <algorithm>

#include "macsched/core/engine.hpp"
#include "macsched/core/errors.hpp"
#include "macsched/core/rng.hpp"

namespace macsched::algorithms {

MixAndTest::MixAndTest(int scale, std::int64_t total_length, int machine_count,
                       LocalView& view)
    : rounds_(static_cast<int>(ceil_sqrt(total_length)) + ceil_log2(machine_count)),
      threshold_(static_cast<int>(ceil_sqrt(total_length))) {
  view.leaders.clear();
  view.scale = scale;
  view.coin = std::max<std::int64_t>(ceil_div_pow2(machine_count, scale), 1);
}

std::optional<Payload> MixAndTest::intent(MachineId self, const LocalView& view,
                                          std::uint64_t seed, Round round) const {
  if (std::find(view.leaders.begin(), view.leaders.end(), self) !=
      view.leaders.end()) {
    return std::nullopt;
  }
  if (!toss(seed, self, round, view.coin)) return std::nullopt;
  return Payload{PayloadKind::Elect, {}};
}

void MixAndTest::observe(const ChannelOutcome& outcome, LocalView& view) {
  ++elapsed_;
  if (!outcome.delivered) return;
  const MachineId w = outcome.delivered->sender;
  if (outcome.delivered->payload.kind != PayloadKind::Elect ||
      std::find(view.leaders.begin(), view.leaders.end(), w) != view.leaders.end()) {
    throw ProtocolViolation("unexpected broadcast during leader election");
  }
  view.elect(w);
  view.coin = std::max<std::int64_t>(view.coin - 1, 1);
  ++heard_;
}

void MixAndTest::append_key(std::string& key) const {
  key += 'M' + std::to_string(rounds_) + ',' + std::to_string(elapsed_) + ',' +
         std::to_string(heard_) + '|';
}

ConfirmWork::ConfirmWork(int machine_count) : machine_count_(machine_count) {}

std::int64_t ConfirmWork::coin() const {
  return std::max<std::int64_t>(ceil_div_pow2(machine_count_, scale_), 1);
}

std::optional<Payload> ConfirmWork::intent(MachineId self, std::uint64_t seed,
                                           Round round) const {
  if (!toss(seed, self, round, coin())) return std::nullopt;
  return Payload{PayloadKind::AllDone, {}};
}

void ConfirmWork::observe(const ChannelOutcome& outcome) {
  if (outcome.delivered) {
    if (outcome.delivered->payload.kind != PayloadKind::AllDone) {
      throw ProtocolViolation("unexpected broadcast during Confirm-Work");
    }
    confirmed_ = true;
    return;
  }
  scale_ = (scale_ + 1) % (ceil_log2(machine_count_) + 1);
}

void ConfirmWork::append_key(std::string& key) const {
  key += 'C' + std::to_string(scale_) + (confirmed_ ? "y|" : "n|");
}

void SilentWork::observe(const ChannelOutcome& outcome) {
  if (outcome.delivered) {
    throw ProtocolViolation("broadcast heard during the silent epoch");
  }
  ++elapsed_;
}

void SilentWork::append_key(std::string& key) const {
  key += 'S' + std::to_string(elapsed_) + '/' + std::to_string(rounds_) + '|';
}

namespace {

class MixProcess {
 public:
  MixProcess(MachineId self, int scale, std::int64_t total_length,
             int machine_count, int operational, std::uint64_t seed)
      : self_(self), seed_(seed), view_(), mix_(scale, total_length, machine_count, view_) {
    for (MachineId v = 1; v <= operational; ++v) view_.machines.push_back(v);
  }

  bool halted() const { return mix_.finished(); }
  std::optional<Payload> intent(Round r) const {
    return mix_.intent(self_, view_, seed_, r);
  }
  void observe(Round, const ChannelOutcome& outcome) { mix_.observe(outcome, view_); }
  const MixAndTest& mix() const { return mix_; }

 private:
  MachineId self_;
  std::uint64_t seed_;
  LocalView view_;
  MixAndTest mix_;
};

class ConfirmProcess {
 public:
  ConfirmProcess(MachineId self, int machine_count, std::uint64_t seed)
      : self_(self), seed_(seed), confirm_(machine_count) {}

  bool halted() const { return confirm_.finished(); }
  std::optional<Payload> intent(Round r) const { return confirm_.intent(self_, seed_, r); }
  void observe(Round, const ChannelOutcome& outcome) { confirm_.observe(outcome); }

 private:
  MachineId self_;
  std::uint64_t seed_;
  ConfirmWork confirm_;
};

}  // namespace

MixAndTestRun run_mix_and_test(int scale, std::int64_t total_length,
                               int machine_count, int operational,
                               std::uint64_t seed) {
  if (operational < 1) throw std::invalid_argument("need an operational machine");
  std::vector<MixProcess> processes;
  for (MachineId v = 1; v <= operational; ++v) {
    processes.emplace_back(v, scale, total_length, machine_count, operational, seed);
  }
  const Round rounds = processes.front().mix().rounds();
  Engine<MixProcess> engine(std::move(processes), 0, std::max<Round>(rounds, 1));
  engine.run();
  const MixAndTest& mix = engine.process(1).mix();
  return {mix.succeeded(), mix.heard(), engine.work()};
}

ConfirmWorkRun run_confirm_work(int machine_count, int operational,
                                std::uint64_t seed) {
  std::vector<ConfirmProcess> processes;
  for (MachineId v = 1; v <= operational; ++v) {
    processes.emplace_back(v, machine_count, seed);
  }
  Engine<ConfirmProcess> engine(std::move(processes), 0, 1'000'000);
  engine.run();
  ConfirmWorkRun run;
  run.rounds = engine.round();
  run.work = engine.work();
  run.all_halted_together = true;
  for (MachineId v = 1; v <= operational; ++v) {
    if (engine.status(v).at != engine.round()) run.all_halted_together = false;
  }
  return run;
}

}  // namespace macsched::algorithms
