// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "macsched/algorithms/view.hpp"
#include "macsched/core/types.hpp"

namespace macsched::algorithms {

// Leader election by coin tossing. Runs ceil(sqrt L) + ceil(log2 m) rounds;
// every machine not yet elected in this run transmits with probability
// 1/coin, and each lone transmission moves its sender to the front of
// MACHINES and lowers the coin by one (floored at 1).
class MixAndTest {
 public:
  // Resets the view's leader set and sets coin = ceil(m / 2^scale).
  MixAndTest(int scale, std::int64_t total_length, int machine_count,
             LocalView& view);

  std::optional<Payload> intent(MachineId self, const LocalView& view,
                                std::uint64_t seed, Round round) const;
  void observe(const ChannelOutcome& outcome, LocalView& view);

  bool finished() const { return elapsed_ >= rounds_; }
  // At least ceil(sqrt L) lone transmissions were heard.
  bool succeeded() const { return heard_ >= threshold_; }
  int heard() const { return heard_; }
  int rounds() const { return rounds_; }

  bool operator==(const MixAndTest&) const = default;
  void append_key(std::string& key) const;

 private:
  int rounds_ = 0;
  int threshold_ = 0;
  int elapsed_ = 0;
  int heard_ = 0;
};

// Termination handshake after the silent all-tasks epoch. The scale cycles
// 0..ceil(log2 m); each round every machine transmits with probability
// 2^scale / m until one transmission is heard.
class ConfirmWork {
 public:
  explicit ConfirmWork(int machine_count);

  std::int64_t coin() const;
  std::optional<Payload> intent(MachineId self, std::uint64_t seed,
                                Round round) const;
  void observe(const ChannelOutcome& outcome);

  bool finished() const { return confirmed_; }
  int scale() const { return scale_; }

  bool operator==(const ConfirmWork&) const = default;
  void append_key(std::string& key) const;

 private:
  int machine_count_ = 1;
  int scale_ = 0;
  bool confirmed_ = false;
};

// Every machine performs all tasks locally; nobody transmits.
class SilentWork {
 public:
  explicit SilentWork(std::int64_t rounds) : rounds_(rounds) {}

  std::optional<Payload> intent() const { return std::nullopt; }
  void observe(const ChannelOutcome& outcome);
  bool finished() const { return elapsed_ >= rounds_; }

  bool operator==(const SilentWork&) const = default;
  void append_key(std::string& key) const;

 private:
  std::int64_t rounds_ = 0;
  std::int64_t elapsed_ = 0;
};

struct MixAndTestRun {
  bool result = false;
  int heard = 0;
  Work work = 0;
};

// Runs Mix-And-Test alone on `operational` machines (ids 1..operational) of an
// m-machine system, failure-free.
MixAndTestRun run_mix_and_test(int scale, std::int64_t total_length,
                               int machine_count, int operational,
                               std::uint64_t seed);

struct ConfirmWorkRun {
  Round rounds = 0;
  Work work = 0;
  bool all_halted_together = false;
};

ConfirmWorkRun run_confirm_work(int machine_count, int operational,
                                std::uint64_t seed);

}  // namespace macsched::algorithms
