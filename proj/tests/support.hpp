// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "macsched/algorithms/scheduler.hpp"

namespace macsched::testing {

// Transmits on the listed rounds and halts at a fixed boundary.
struct ScriptProcess {
  std::map<Round, Payload> sends;
  Round halt_at = 0;
  Round now = 0;

  bool halted() const { return now >= halt_at; }
  std::optional<Payload> intent(Round r) const {
    auto it = sends.find(r);
    if (it == sends.end()) return std::nullopt;
    return it->second;
  }
  void observe(Round r, const ChannelOutcome&) { now = r; }
};

inline Payload elect() { return Payload{PayloadKind::Elect, {}}; }

inline Payload confirm(std::vector<TaskSpan> spans) {
  return Payload{PayloadKind::Confirm, std::move(spans)};
}

inline algorithms::SimEnv env_for(algorithms::Algorithm algorithm, int m,
                                  std::vector<int> lengths,
                                  adversary::AdversarySpec adversary = {},
                                  std::uint64_t seed = 1) {
  algorithms::SimEnv env;
  env.machine_count = m;
  env.jobs = JobSet::from_lengths(lengths);
  env.algorithm = algorithm;
  env.mode = algorithms::default_mode(algorithm);
  env.adversary = std::move(adversary);
  env.seed = seed;
  return env;
}

inline adversary::AdversarySpec adversary_of(adversary::Kind kind, int f) {
  adversary::AdversarySpec spec;
  spec.kind = kind;
  spec.budget = f;
  return spec;
}

inline TaskTable table_of(std::vector<int> lengths) {
  return make_task_table(JobSet::from_lengths(lengths));
}

inline std::vector<MachineId> ids(int m) {
  std::vector<MachineId> out;
  for (MachineId v = 1; v <= m; ++v) out.push_back(v);
  return out;
}

}  // namespace macsched::testing
