// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include "macsched/adversary/adversary.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "macsched/core/errors.hpp"

namespace macsched::adversary {

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::None:
      return "none";
    case Kind::Schedule:
      return "schedule";
    case Kind::Silencer:
      return "silencer";
    case Kind::LeaderHunter:
      return "leader_hunter";
    case Kind::Random:
      return "random";
  }
  return "?";
}

Kind parse_kind(const std::string& text) {
  if (text == "none") return Kind::None;
  if (text == "schedule") return Kind::Schedule;
  if (text == "silencer") return Kind::Silencer;
  if (text == "leader_hunter") return Kind::LeaderHunter;
  if (text == "random") return Kind::Random;
  throw ConfigError("unknown adversary kind '" + text + "'");
}

std::string AdversarySpec::label() const {
  if (kind == Kind::Random) {
    std::ostringstream out;
    out << "random:" << probability;
    return out.str();
  }
  return to_string(kind);
}

void validate_schedule(const CrashSchedule& schedule, int f, int m) {
  if (m < 1) throw ConfigError("machine count must be >= 1");
  if (f < 0 || f > m - 1) {
    throw ConfigError("crash budget f=" + std::to_string(f) +
                      " outside [0, m-1] for m=" + std::to_string(m));
  }
  if (static_cast<int>(schedule.size()) > f) {
    throw ConfigError("schedule has " + std::to_string(schedule.size()) +
                      " crashes but the budget is f=" + std::to_string(f));
  }
  std::set<MachineId> seen;
  for (const auto& entry : schedule) {
    if (entry.machine < 1 || entry.machine > m) {
      throw ConfigError("schedule names machine " + std::to_string(entry.machine) +
                        " outside 1.." + std::to_string(m));
    }
    if (entry.round < 0) throw ConfigError("schedule rounds must be >= 0");
    if (!seen.insert(entry.machine).second) {
      throw ConfigError("schedule crashes machine " +
                        std::to_string(entry.machine) + " twice");
    }
  }
}

CrashSchedule parse_schedule(const std::string& text) {
  CrashSchedule schedule;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line.substr(start));
    long long machine = 0;
    long long round = 0;
    char comma = 0;
    if (!(fields >> machine >> comma >> round) || comma != ',') {
      throw ConfigError("schedule line " + std::to_string(line_no) +
                        ": expected `machine,round`");
    }
    std::string rest;
    if (fields >> rest) {
      throw ConfigError("schedule line " + std::to_string(line_no) +
                        ": trailing characters");
    }
    schedule.push_back({static_cast<MachineId>(machine), round});
  }
  return schedule;
}

CrashSchedule load_schedule_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open schedule file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_schedule(buffer.str());
}

CrashSchedule materialize_random(double p, std::uint64_t seed, int f, int m) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("random adversary needs p in [0,1]");
  CrashSchedule all;
  if (p == 0.0 || f == 0) return all;
  std::mt19937_64 rng(seed);
  for (MachineId v = 1; v <= m; ++v) {
    Round round = 1;
    if (p < 1.0) {
      std::geometric_distribution<long long> failures(p);
      round += failures(rng);
    }
    all.push_back({v, round});
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const ScheduledCrash& a, const ScheduledCrash& b) {
                     return a.round < b.round;
                   });
  all.resize(std::min<std::size_t>(all.size(), static_cast<std::size_t>(f)));
  return all;
}

Adversary::Adversary(AdversarySpec spec, int machine_count)
    : spec_(std::move(spec)), machine_count_(machine_count) {
  if (spec_.budget < 0 || spec_.budget > machine_count - 1) {
    throw ConfigError("crash budget f=" + std::to_string(spec_.budget) +
                      " outside [0, m-1] for m=" + std::to_string(machine_count));
  }
  if (spec_.kind == Kind::Schedule) {
    validate_schedule(spec_.schedule, spec_.budget, machine_count);
    fixed_ = spec_.schedule;
  } else if (spec_.kind == Kind::Random) {
    fixed_ = materialize_random(spec_.probability, spec_.seed, spec_.budget,
                                machine_count);
  }
  for (MachineId v = 1; v <= machine_count; ++v) order_.push_back(v);
}

void Adversary::ingest(const ExecutionTrace& history) {
  for (; ingested_ < history.rounds.size(); ++ingested_) {
    const auto& record = history.rounds[ingested_];
    if (record.outcome.delivered &&
        record.outcome.delivered->payload.kind == PayloadKind::Elect) {
      const MachineId w = record.outcome.delivered->sender;
      auto it = std::find(order_.begin(), order_.end(), w);
      if (it != order_.end()) std::rotate(order_.begin(), it, it + 1);
    }
  }
}

MachineId Adversary::reconstructed_head(const Observation& observation) {
  ingest(observation.history);
  for (MachineId v : order_) {
    if (observation.status[v - 1].running()) return v;
  }
  return 0;
}

std::vector<MachineId> Adversary::decide(const Observation& observation) {
  std::vector<MachineId> crashes;
  if (observation.remaining_budget <= 0) return crashes;
  switch (spec_.kind) {
    case Kind::None:
      break;
    case Kind::Schedule:
    case Kind::Random:
      for (const auto& entry : fixed_) {
        const Round effective = std::max<Round>(entry.round, 1);
        if (effective == observation.round &&
            observation.status[entry.machine - 1].running() &&
            static_cast<int>(crashes.size()) < observation.remaining_budget) {
          crashes.push_back(entry.machine);
        }
      }
      break;
    case Kind::Silencer:
      if (observation.intents.size() == 1) {
        crashes.push_back(observation.intents.front().sender);
      }
      break;
    case Kind::LeaderHunter: {
      const MachineId head = reconstructed_head(observation);
      const bool broadcasting =
          std::any_of(observation.intents.begin(), observation.intents.end(),
                      [head](const TransmissionIntent& i) { return i.sender == head; });
      if (head != 0 && broadcasting) crashes.push_back(head);
      break;
    }
  }
  return crashes;
}

}  // namespace macsched::adversary
