// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "macsched/core/engine.hpp"

namespace macsched::adversary {

struct ScheduledCrash {
  MachineId machine = 0;
  Round round = 0;

  bool operator==(const ScheduledCrash&) const = default;
};

// Fixed before round 0. A crash scheduled for round 0 or 1 takes effect in
// round 1, so the machine contributes no work.
using CrashSchedule = std::vector<ScheduledCrash>;

enum class Kind { None, Schedule, Silencer, LeaderHunter, Random };

std::string to_string(Kind kind);
Kind parse_kind(const std::string& text);

struct AdversarySpec {
  int budget = 0;  // f
  Kind kind = Kind::None;
  CrashSchedule schedule;   // Kind::Schedule
  double probability = 0;   // Kind::Random, per machine per round
  std::uint64_t seed = 0;   // Kind::Random

  // Adaptive kinds decide online from the observation.
  bool adaptive() const {
    return kind == Kind::Silencer || kind == Kind::LeaderHunter;
  }
  std::string label() const;
};

// Throws ConfigError unless machines are distinct, in 1..m, rounds >= 0 and
// |schedule| <= f <= m-1.
void validate_schedule(const CrashSchedule& schedule, int f, int m);

// Text lines `machine,round`; blank lines and lines starting with '#' are
// skipped.
CrashSchedule parse_schedule(const std::string& text);
CrashSchedule load_schedule_file(const std::string& path);

// Random(p, seed) drawn up front: every machine gets a geometric(p) crash
// round, and the f earliest (ties by id) are kept.
CrashSchedule materialize_random(double p, std::uint64_t seed, int f, int m);

class Adversary {
 public:
  Adversary(AdversarySpec spec, int machine_count);

  std::vector<MachineId> decide(const Observation& observation);
  std::vector<MachineId> operator()(const Observation& observation) {
    return decide(observation);
  }

  const AdversarySpec& spec() const { return spec_; }
  // Head of MACHINES as reconstructed from the public channel history.
  MachineId reconstructed_head(const Observation& observation);

 private:
  void ingest(const ExecutionTrace& history);

  AdversarySpec spec_;
  int machine_count_;
  CrashSchedule fixed_;              // Schedule and Random kinds
  std::vector<MachineId> order_;     // leader-hunter view of MACHINES
  std::size_t ingested_ = 0;
};

}  // namespace macsched::adversary
