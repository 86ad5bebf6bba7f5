// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "macsched/adversary/adversary.hpp"
#include "macsched/algorithms/randomized.hpp"
#include "macsched/algorithms/view.hpp"
#include "macsched/core/engine.hpp"
#include "macsched/tapebb/epoch.hpp"

namespace macsched::algorithms {

enum class Algorithm { ScaTri, DefTri, RanScaTri };

std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& text);
Mode default_mode(Algorithm algorithm);

struct SimEnv {
  int machine_count = 1;
  JobSet jobs;
  adversary::AdversarySpec adversary;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::ScaTri;
  Mode mode = Mode::Preemptive;
  Round round_limit = 0;  // 0 selects default_round_limit
};

// 64 * (L + m*alpha + m + 1).
Round default_round_limit(const SimEnv& env);
Round effective_round_limit(const SimEnv& env);

// Throws ConfigError on m < 1, f outside [0, m-1], a mode/algorithm mismatch,
// or an adaptive adversary handed to RanScaTri.
void validate(const SimEnv& env);

// Which part of RanScaTri runs first for a given instance size.
enum class RandomizedBranch { DelegateScaTri, SilentAllTasks, MixAndTestLoop };
RandomizedBranch randomized_branch(int machine_count, std::int64_t total_length);

struct RunContext {
  Algorithm algorithm = Algorithm::ScaTri;
  Mode mode = Mode::Preemptive;
  int machine_count = 1;
  std::int64_t total_length = 0;  // L of the original instance
  std::uint64_t seed = 0;
};

// Per-machine replicated state machine for all three schedulers. Each
// activity (epoch, election, handshake, silent epoch) spans rounds; the
// decisions between activities take no rounds.
class SchedulerProcess {
 public:
  SchedulerProcess(MachineId self, std::shared_ptr<const RunContext> context,
                   const JobSet& jobs);

  bool halted() const { return halted_; }
  std::optional<Payload> intent(Round round) const;
  void observe(Round round, const ChannelOutcome& outcome);

  MachineId id() const { return self_; }
  const LocalView& view() const { return view_; }
  std::string activity_name() const;
  // Plan of the epoch in progress, if any.
  const tapebb::TrianglePlan* current_plan() const;
  int epochs_completed() const { return epochs_completed_; }
  void append_key(std::string& key) const;

 private:
  enum class Stage {
    ScaTri,
    DefTri,
    RandomStart,
    RandomScale,    // outer loop over i
    RandomTested,   // Mix-And-Test just ended
    RandomEpochs,   // inner TaPeBB loop over the leader prefix
    RandomEpochEnded,
    RandomSilentEnded,
    RandomConfirmed,
  };

  void plan_next();
  void finish_activity();
  void halt();
  void start_epoch(tapebb::TrianglePlan plan, Stage after);

  MachineId self_;
  std::shared_ptr<const RunContext> context_;
  LocalView view_;
  Stage stage_;
  bool halted_ = false;
  std::variant<std::monostate, tapebb::EpochExecution, MixAndTest, ConfirmWork,
               SilentWork>
      activity_;
  Stage after_epoch_ = Stage::ScaTri;
  int last_heard_ = 0;
  int epochs_completed_ = 0;  // not part of append_key
};

using SchedulerEngine = Engine<SchedulerProcess>;

SchedulerEngine make_engine(const SimEnv& env);

// All running machines hold equal views.
bool views_consistent(const SchedulerEngine& engine);

struct RunResult {
  ExecutionTrace trace;
  Work work = 0;
  Round rounds = 0;
  ReliabilityVerdict verdict;
};

// Validates, runs to completion against env.adversary, then audits the
// trace. Throws RoundLimitExceeded on non-termination.
RunResult simulate(const SimEnv& env, bool check_views = false);

}  // namespace macsched::algorithms
