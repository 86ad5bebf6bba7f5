// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "macsched/algorithms/scheduler.hpp"
#include "macsched/harness/jobs.hpp"

namespace macsched::harness {

// `none`, `silencer`, `leader_hunter`, `schedule:<file>`, `random:<p>` or
// `random:<p>:<seed>`. Without an explicit seed the random adversary derives
// one from the run seed.
adversary::AdversarySpec parse_adversary(const std::string& text, int f, int m,
                                         std::uint64_t run_seed);

struct Scenario {
  algorithms::Algorithm algorithm = algorithms::Algorithm::ScaTri;
  std::optional<Mode> mode;  // defaults to the algorithm's mode
  int machines = 1;
  JobsSpec jobs;
  std::string adversary = "none";
  int f = 0;
  std::uint64_t seed = 0;
  Round round_limit = 0;
};

algorithms::SimEnv build_env(const Scenario& scenario);

struct ResultRow {
  std::string algo;
  int m = 0;
  int n = 0;
  std::int64_t L = 0;
  int alpha = 0;
  int f = 0;
  std::string adversary;
  std::uint64_t seed = 0;
  Work work = 0;
  Round rounds = 0;
  bool reliable = false;
  double bound_pre = 0;
  double bound_nonpre = 0;
  double bound_rand = 0;

  bool operator==(const ResultRow&) const = default;
};

std::string csv_header();
std::string to_csv(const ResultRow& row);
ResultRow parse_csv_row(const std::string& line);
// Skips the header line; throws ConfigError on a schema mismatch.
std::vector<ResultRow> read_csv(std::istream& in);
std::string write_csv(std::span<const ResultRow> rows);

struct ScenarioRun {
  ResultRow row;
  algorithms::RunResult result;
};

ScenarioRun run_scenario(const Scenario& scenario);
ResultRow run_once(const Scenario& scenario);

// Reruns the scenario and dumps every epoch's plan, each preceded by a
// `# epoch <k> round <r>` line giving the round before its first round.
std::string plan_log(const Scenario& scenario);

struct SweepGrid {
  std::vector<algorithms::Algorithm> algorithms;
  std::optional<Mode> mode;
  std::vector<int> machines;
  std::vector<JobsSpec> jobs;
  std::vector<std::string> adversaries{"none"};
  std::vector<int> f{0};
  std::vector<std::uint64_t> seeds;
  Round round_limit = 0;
  std::string out;
};

// seed_k = base + k for k < count.
std::vector<std::uint64_t> expand_seeds(std::uint64_t count, std::uint64_t base);

// JSON object with keys algo, mode, machines, jobs, adversary, f, seeds,
// seed_count, seed_base, round_limit, out. Axis keys accept a scalar or a
// list. Unknown keys are a ConfigError.
SweepGrid parse_grid(const std::string& json_text);
SweepGrid load_grid(const std::string& path);

// Cells in lexicographic order of axis positions (algo, machines, jobs,
// adversary, f), then seed. Every cell is validated before anything runs.
std::vector<Scenario> expand(const SweepGrid& grid);
std::vector<ResultRow> sweep(const SweepGrid& grid);

// Process exit codes shared by the command-line tools.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUnreliable = 1;
inline constexpr int kExitConfig = 2;

int exit_status(std::span<const ResultRow> rows);

}  // namespace macsched::harness
