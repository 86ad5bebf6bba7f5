// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include "macsched/algorithms/scheduler.hpp"

#include <algorithm>
#include <cmath>

#include "macsched/core/errors.hpp"

namespace macsched::algorithms {

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::ScaTri:
      return "scatri";
    case Algorithm::DefTri:
      return "deftri";
    case Algorithm::RanScaTri:
      return "ranscatri";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& text) {
  if (text == "scatri") return Algorithm::ScaTri;
  if (text == "deftri") return Algorithm::DefTri;
  if (text == "ranscatri") return Algorithm::RanScaTri;
  throw ConfigError("unknown algorithm '" + text + "'");
}

Mode default_mode(Algorithm algorithm) {
  return algorithm == Algorithm::DefTri ? Mode::NonPreemptive : Mode::Preemptive;
}

Round default_round_limit(const SimEnv& env) {
  const Round m = env.machine_count;
  return 64 * (env.jobs.total_length() + m * env.jobs.max_length() + m + 1);
}

Round effective_round_limit(const SimEnv& env) {
  return env.round_limit > 0 ? env.round_limit : default_round_limit(env);
}

void validate(const SimEnv& env) {
  if (env.machine_count < 1) throw ConfigError("machine count must be >= 1");
  const int f = env.adversary.budget;
  if (f < 0 || f > env.machine_count - 1) {
    throw ConfigError("crash budget f=" + std::to_string(f) +
                      " outside [0, m-1] for m=" +
                      std::to_string(env.machine_count));
  }
  if (env.mode != default_mode(env.algorithm)) {
    throw ConfigError(to_string(env.algorithm) + " cannot run in " +
                      to_string(env.mode) + " mode");
  }
  if (env.algorithm == Algorithm::RanScaTri && env.adversary.adaptive()) {
    throw ConfigError("ranscatri requires a non-adaptive adversary, got " +
                      env.adversary.label());
  }
  if (env.adversary.kind == adversary::Kind::Schedule) {
    adversary::validate_schedule(env.adversary.schedule, f, env.machine_count);
  }
  if (env.round_limit < 0) throw ConfigError("round limit must be positive");
}

RandomizedBranch randomized_branch(int machine_count, std::int64_t total_length) {
  const auto m = static_cast<std::int64_t>(machine_count);
  if (m * m <= total_length) return RandomizedBranch::DelegateScaTri;
  const double lhs = std::log2(static_cast<double>(m));
  const double rhs = std::exp(std::sqrt(static_cast<double>(total_length)) / 32.0);
  if (lhs > rhs) return RandomizedBranch::SilentAllTasks;
  return RandomizedBranch::MixAndTestLoop;
}

SchedulerProcess::SchedulerProcess(MachineId self,
                                   std::shared_ptr<const RunContext> context,
                                   const JobSet& jobs)
    : self_(self),
      context_(std::move(context)),
      view_(LocalView::initial(context_->machine_count, jobs)) {
  switch (context_->algorithm) {
    case Algorithm::ScaTri:
      stage_ = Stage::ScaTri;
      break;
    case Algorithm::DefTri:
      stage_ = Stage::DefTri;
      break;
    case Algorithm::RanScaTri:
      stage_ = Stage::RandomStart;
      break;
  }
  plan_next();
}

std::optional<Payload> SchedulerProcess::intent(Round round) const {
  const std::uint64_t seed = context_->seed;
  return std::visit(
      [&](const auto& activity) -> std::optional<Payload> {
        using T = std::decay_t<decltype(activity)>;
        if constexpr (std::is_same_v<T, tapebb::EpochExecution>) {
          return activity.intent(self_);
        } else if constexpr (std::is_same_v<T, MixAndTest>) {
          return activity.intent(self_, view_, seed, round);
        } else if constexpr (std::is_same_v<T, ConfirmWork>) {
          return activity.intent(self_, seed, round);
        } else if constexpr (std::is_same_v<T, SilentWork>) {
          return activity.intent();
        } else {
          return std::nullopt;
        }
      },
      activity_);
}

void SchedulerProcess::observe(Round, const ChannelOutcome& outcome) {
  bool finished = false;
  std::visit(
      [&](auto& activity) {
        using T = std::decay_t<decltype(activity)>;
        if constexpr (std::is_same_v<T, MixAndTest>) {
          activity.observe(outcome, view_);
          finished = activity.finished();
        } else if constexpr (!std::is_same_v<T, std::monostate>) {
          activity.observe(outcome);
          finished = activity.finished();
        } else if (outcome.delivered && !halted_) {
          throw ProtocolViolation("broadcast heard while idle");
        }
      },
      activity_);
  if (finished) {
    finish_activity();
    plan_next();
  }
}

void SchedulerProcess::finish_activity() {
  if (auto* epoch = std::get_if<tapebb::EpochExecution>(&activity_)) {
    view_.fold(epoch->outcome());
    last_heard_ = epoch->outcome().broadcasts_heard;
    ++epochs_completed_;
    stage_ = after_epoch_;
  } else if (auto* mix = std::get_if<MixAndTest>(&activity_)) {
    stage_ = Stage::RandomTested;
    last_heard_ = mix->succeeded() ? 1 : 0;
  } else if (std::holds_alternative<ConfirmWork>(activity_)) {
    stage_ = Stage::RandomConfirmed;
  } else if (std::holds_alternative<SilentWork>(activity_)) {
    stage_ = Stage::RandomSilentEnded;
  }
  activity_ = std::monostate{};
}

void SchedulerProcess::halt() {
  halted_ = true;
  activity_ = std::monostate{};
}

void SchedulerProcess::start_epoch(tapebb::TrianglePlan plan, Stage after) {
  view_.d = plan.d;
  view_.phi = plan.phi;
  after_epoch_ = after;
  activity_ = tapebb::EpochExecution(std::move(plan));
}

void SchedulerProcess::plan_next() {
  const int m = context_->machine_count;
  const std::int64_t total_length = context_->total_length;
  const std::int64_t leaders = ceil_sqrt(total_length);
  const auto operational = static_cast<std::int64_t>(view_.machines.size());
  for (;;) {
    switch (stage_) {
      case Stage::ScaTri: {
        if (view_.done()) return halt();
        const std::int64_t d = ceil_div_pow2(m, view_.scale);
        // A job never spans two columns, so fewer jobs than columns leaves
        // most of the triangle idle.
        const auto jobs = static_cast<std::int64_t>(view_.jobs.size());
        if (d > operational || view_.tasks < triangle(d) || jobs < d) {
          ++view_.scale;
          continue;
        }
        return start_epoch(
            tapebb::pack_preemptive(view_.jobs, view_.machines, static_cast<int>(d), 1),
            Stage::ScaTri);
      }
      case Stage::DefTri: {
        if (view_.done()) return halt();
        const std::int64_t d = ceil_div_pow2(m, view_.scale);
        if (d > operational) {
          ++view_.scale;
          continue;
        }
        const auto jobs = static_cast<std::int64_t>(view_.jobs.size());
        if (jobs >= triangle(d)) {
          const auto phi = static_cast<int>((view_.tasks + jobs - 1) / jobs);
          return start_epoch(tapebb::pack_nonpreemptive(view_.jobs, view_.machines,
                                                        static_cast<int>(d), phi),
                             Stage::DefTri);
        }
        // The long-job epoch only pays off for fewer jobs than columns.
        if (view_.tasks < triangle(d) || jobs >= d) {
          ++view_.scale;
          continue;
        }
        const auto width = static_cast<int>(std::min(jobs, operational));
        return start_epoch(tapebb::pack_longjob(view_.jobs, view_.machines, width),
                           Stage::DefTri);
      }
      case Stage::RandomStart: {
        if (view_.done()) return halt();
        switch (randomized_branch(m, total_length)) {
          case RandomizedBranch::DelegateScaTri:
            stage_ = Stage::ScaTri;
            view_.scale = 0;
            continue;
          case RandomizedBranch::SilentAllTasks:
            activity_ = SilentWork(total_length);
            return;
          case RandomizedBranch::MixAndTestLoop:
            stage_ = Stage::RandomScale;
            view_.scale = 0;
            continue;
        }
        continue;
      }
      case Stage::RandomScale: {
        if (view_.done()) return halt();
        if (ceil_div_pow2(m, view_.scale) <= leaders) {
          stage_ = Stage::ScaTri;
          view_.scale = 0;
          continue;
        }
        activity_ = MixAndTest(view_.scale, total_length, m, view_);
        return;
      }
      case Stage::RandomTested:
        if (last_heard_ == 1) {
          stage_ = Stage::RandomEpochs;
        } else {
          ++view_.scale;
          stage_ = Stage::RandomScale;
        }
        continue;
      case Stage::RandomEpochs: {
        if (view_.done()) return halt();
        if (leaders > operational) {
          stage_ = Stage::RandomScale;
          continue;
        }
        return start_epoch(tapebb::pack_preemptive(view_.jobs, view_.machines,
                                                   static_cast<int>(leaders), 1),
                           Stage::RandomEpochEnded);
      }
      case Stage::RandomEpochEnded:
        if (view_.done()) return halt();
        stage_ = 4 * static_cast<std::int64_t>(last_heard_) >= leaders
                     ? Stage::RandomEpochs
                     : Stage::RandomScale;
        continue;
      case Stage::RandomSilentEnded:
        activity_ = ConfirmWork(m);
        return;
      case Stage::RandomConfirmed:
        view_.jobs.clear();
        view_.tasks = 0;
        return halt();
    }
  }
}

std::string SchedulerProcess::activity_name() const {
  if (halted_) return "halted";
  return std::visit(
      [](const auto& activity) -> std::string {
        using T = std::decay_t<decltype(activity)>;
        if constexpr (std::is_same_v<T, tapebb::EpochExecution>) {
          return "epoch:" + tapebb::to_string(activity.plan().mode);
        } else if constexpr (std::is_same_v<T, MixAndTest>) {
          return "mix_and_test";
        } else if constexpr (std::is_same_v<T, ConfirmWork>) {
          return "confirm_work";
        } else if constexpr (std::is_same_v<T, SilentWork>) {
          return "all_tasks";
        } else {
          return "idle";
        }
      },
      activity_);
}

const tapebb::TrianglePlan* SchedulerProcess::current_plan() const {
  if (const auto* epoch = std::get_if<tapebb::EpochExecution>(&activity_)) {
    return &epoch->plan();
  }
  return nullptr;
}

void SchedulerProcess::append_key(std::string& key) const {
  key += std::to_string(static_cast<int>(stage_)) + ',' +
         std::to_string(static_cast<int>(after_epoch_)) + ',' +
         std::to_string(last_heard_) + (halted_ ? "h|" : "r|");
  view_.append_key(key);
  std::visit(
      [&key](const auto& activity) {
        if constexpr (requires { activity.append_key(key); }) {
          activity.append_key(key);
        }
      },
      activity_);
}

SchedulerEngine make_engine(const SimEnv& env) {
  validate(env);
  auto context = std::make_shared<RunContext>();
  context->algorithm = env.algorithm;
  context->mode = env.mode;
  context->machine_count = env.machine_count;
  context->total_length = env.jobs.total_length();
  context->seed = env.seed;
  std::vector<SchedulerProcess> processes;
  processes.reserve(static_cast<std::size_t>(env.machine_count));
  for (MachineId v = 1; v <= env.machine_count; ++v) {
    processes.emplace_back(v, context, env.jobs);
  }
  return SchedulerEngine(std::move(processes), env.adversary.budget,
                         effective_round_limit(env));
}

bool views_consistent(const SchedulerEngine& engine) {
  const LocalView* reference = nullptr;
  for (const auto& process : engine.processes()) {
    if (!engine.status(process.id()).running()) continue;
    if (reference == nullptr) {
      reference = &process.view();
    } else if (!(process.view() == *reference)) {
      return false;
    }
  }
  return true;
}

RunResult simulate(const SimEnv& env, bool check_views) {
  SchedulerEngine engine = make_engine(env);
  adversary::Adversary adversary(env.adversary, env.machine_count);
  while (!engine.finished()) {
    engine.advance_round(adversary);
    if (check_views && !views_consistent(engine)) {
      throw ProtocolViolation("replicated views diverged in round " +
                              std::to_string(engine.round()));
    }
  }
  RunResult result;
  result.rounds = engine.round();
  result.work = engine.work();
  result.trace = std::move(engine).take_trace();
  if (total_work(result.trace) != result.work) {
    throw ProtocolViolation("work ledger disagrees with terminal rounds");
  }
  result.verdict = verify_reliability(result.trace, env.jobs, env.mode);
  return result;
}

}  // namespace macsched::algorithms
