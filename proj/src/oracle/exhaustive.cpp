// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include "macsched/oracle/exhaustive.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_map>
#include <vector>

#include "macsched/core/errors.hpp"

namespace macsched::oracle {

namespace {

using algorithms::Algorithm;
using algorithms::SchedulerEngine;

struct Node {
  SchedulerEngine engine;
  ConfirmationTracker tracker;
};

struct Future {
  Work work = 0;  // worst additional work from this state
  bool reliable = true;
};

class Search {
 public:
  Search(const JobSet& jobs, Mode mode, SearchOptions options)
      : jobs_(jobs), mode_(mode), options_(options) {}

  Future explore(const Node& node) {
    if (++result_.nodes > options_.node_cap) {
      throw SearchLimitExceeded("instance too large: more than " +
                                std::to_string(options_.node_cap) +
                                " search nodes");
    }
    if (node.engine.finished()) {
      ++result_.leaves;
      const auto verdict = verify_reliability(node.engine.trace(), jobs_, mode_);
      return {0, verdict.reliable};
    }
    std::string key;
    if (options_.memoize) {
      key = state_key(node);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }

    Node base = node;
    base.engine.begin_round();
    std::vector<MachineId> running;
    for (MachineId v = 1; v <= base.engine.trace().machine_count; ++v) {
      if (base.engine.status(v).running()) running.push_back(v);
    }
    const int budget = base.engine.remaining_budget();
    const Work before = base.engine.work();

    Future best;
    const auto count = static_cast<unsigned>(running.size());
    for (unsigned mask = 0; mask < (1u << count); ++mask) {
      if (std::popcount(mask) > budget) continue;
      std::vector<MachineId> crashes;
      for (unsigned k = 0; k < count; ++k) {
        if (mask & (1u << k)) crashes.push_back(running[k]);
      }
      Node child = base;
      child.engine.commit_round(std::move(crashes));
      child.tracker.observe(child.engine.trace().rounds.back().outcome);
      const Future sub = explore(child);
      const Work total = child.engine.work() - before + sub.work;
      best.work = std::max(best.work, total);
      best.reliable = best.reliable && sub.reliable;
    }
    if (options_.memoize) memo_.emplace(std::move(key), best);
    return best;
  }

  SearchResult result() const { return result_; }

 private:
  static std::string state_key(const Node& node) {
    const SchedulerEngine& engine = node.engine;
    std::string key = std::to_string(engine.round()) + '#' +
                      std::to_string(engine.remaining_budget()) + '#';
    for (MachineId v = 1; v <= engine.trace().machine_count; ++v) {
      const MachineStatus& status = engine.status(v);
      key += static_cast<char>('0' + static_cast<int>(status.state));
      if (status.running()) engine.process(v).append_key(key);
      key += '/';
    }
    node.tracker.append_key(key);
    return key;
  }

  const JobSet& jobs_;
  Mode mode_;
  SearchOptions options_;
  SearchResult result_;
  std::unordered_map<std::string, Future> memo_;
};

algorithms::SimEnv base_env(Algorithm algorithm, int machine_count,
                            const JobSet& jobs, int f) {
  algorithms::SimEnv env;
  env.machine_count = machine_count;
  env.jobs = jobs;
  env.algorithm = algorithm;
  env.mode = algorithms::default_mode(algorithm);
  env.adversary.budget = f;
  return env;
}

}  // namespace

SearchResult exhaustive_worst_case(Algorithm algorithm, int machine_count,
                                   const JobSet& jobs, int f,
                                   SearchOptions options) {
  if (algorithm == Algorithm::RanScaTri) {
    throw ConfigError("exhaustive search needs a deterministic scheduler");
  }
  const algorithms::SimEnv env = base_env(algorithm, machine_count, jobs, f);
  Node root{algorithms::make_engine(env), ConfirmationTracker(jobs, env.mode)};
  Search search(jobs, env.mode, options);
  const Future worst = search.explore(root);
  SearchResult result = search.result();
  result.max_work = worst.work;
  result.all_reliable = worst.reliable;
  return result;
}

SearchResult enumerate_schedules(Algorithm algorithm, int machine_count,
                                 const JobSet& jobs, int f,
                                 std::span<const std::uint64_t> seeds,
                                 Round horizon) {
  algorithms::SimEnv env = base_env(algorithm, machine_count, jobs, f);
  if (seeds.empty()) throw ConfigError("enumerate_schedules needs a seed");
  if (horizon <= 0) {
    env.seed = seeds.front();
    env.adversary.kind = adversary::Kind::None;
    horizon = algorithms::simulate(env).rounds + 2;
  }
  env.adversary.kind = adversary::Kind::Schedule;

  SearchResult result;
  adversary::CrashSchedule schedule;
  auto visit = [&](auto&& self, MachineId next) -> void {
    for (std::uint64_t seed : seeds) {
      env.seed = seed;
      env.adversary.schedule = schedule;
      const auto run = algorithms::simulate(env);
      ++result.leaves;
      result.max_work = std::max(result.max_work, run.work);
      result.all_reliable = result.all_reliable && run.verdict.reliable;
    }
    ++result.nodes;
    if (static_cast<int>(schedule.size()) == f) return;
    for (MachineId v = next; v <= machine_count; ++v) {
      for (Round r = 1; r <= horizon; ++r) {
        schedule.push_back({v, r});
        self(self, v + 1);
        schedule.pop_back();
      }
    }
  };
  visit(visit, 1);
  return result;
}

}  // namespace macsched::oracle
