// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "macsched/core/errors.hpp"
#include "macsched/harness/jobs.hpp"
#include "macsched/harness/scenario.hpp"
#include "macsched/oracle/bounds.hpp"
#include "macsched/oracle/exhaustive.hpp"
#include "macsched/oracle/montecarlo.hpp"

namespace {

using namespace macsched;
using harness::kExitConfig;
using harness::kExitOk;
using harness::kExitUnreliable;

std::optional<Mode> optional_mode(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return macsched::parse_mode(text);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

struct RunArgs {
  std::string config;
  std::string algo;
  std::string mode;
  int machines = 0;
  std::string jobs;
  std::string adversary = "none";
  int f = 0;
  std::uint64_t seed = 0;
  Round round_limit = 0;
  std::string trace;
  std::string plans;
  std::string out;
};

harness::Scenario scenario_of(const RunArgs& a) {
  if (!a.config.empty()) {
    const auto cells = harness::expand(harness::load_grid(a.config));
    if (cells.size() != 1) {
      throw ConfigError("run needs a config with exactly one cell, got " +
                        std::to_string(cells.size()));
    }
    return cells.front();
  }
  if (a.algo.empty() || a.machines < 1 || a.jobs.empty()) {
    throw ConfigError("run needs --algo, --machines and --jobs (or --config)");
  }
  harness::Scenario s;
  s.algorithm = algorithms::parse_algorithm(a.algo);
  s.mode = optional_mode(a.mode);
  s.machines = a.machines;
  s.jobs = harness::parse_jobs_spec(a.jobs);
  s.adversary = a.adversary;
  s.f = a.f;
  s.seed = a.seed;
  s.round_limit = a.round_limit;
  return s;
}

int cmd_run(const RunArgs& a) {
  const auto scenario = scenario_of(a);
  const auto run = harness::run_scenario(scenario);
  const std::vector<harness::ResultRow> rows{run.row};
  const std::string csv = harness::write_csv(rows);
  if (a.out.empty()) {
    std::cout << csv;
  } else {
    write_file(a.out, csv);
  }
  if (!a.trace.empty()) write_file(a.trace, export_trace(run.result.trace));
  if (!a.plans.empty()) write_file(a.plans, harness::plan_log(scenario));
  return harness::exit_status(rows);
}

struct SweepArgs {
  std::string config;
  std::vector<std::string> algo;
  std::string mode;
  std::vector<int> machines;
  std::vector<std::string> jobs;
  std::vector<std::string> adversary;
  std::vector<int> f;
  std::vector<std::uint64_t> seeds;
  std::optional<std::uint64_t> seed_count;
  std::uint64_t seed_base = 0;
  Round round_limit = 0;
  std::string out;
};

int cmd_sweep(const SweepArgs& a) {
  harness::SweepGrid grid;
  if (!a.config.empty()) grid = harness::load_grid(a.config);
  // Flags override the matching config axes.
  if (!a.algo.empty()) {
    grid.algorithms.clear();
    for (const auto& name : a.algo) grid.algorithms.push_back(algorithms::parse_algorithm(name));
  }
  if (!a.mode.empty()) grid.mode = optional_mode(a.mode);
  if (!a.machines.empty()) grid.machines = a.machines;
  if (!a.jobs.empty()) {
    grid.jobs.clear();
    for (const auto& text : a.jobs) grid.jobs.push_back(harness::parse_jobs_spec(text));
  }
  if (!a.adversary.empty()) grid.adversaries = a.adversary;
  if (!a.f.empty()) grid.f = a.f;
  if (!a.seeds.empty() && a.seed_count) {
    throw ConfigError("give either --seeds or --seed-count, not both");
  }
  if (!a.seeds.empty()) grid.seeds = a.seeds;
  if (a.seed_count) grid.seeds = harness::expand_seeds(*a.seed_count, a.seed_base);
  if (grid.seeds.empty()) grid.seeds = {0};
  if (a.round_limit > 0) grid.round_limit = a.round_limit;
  if (!a.out.empty()) grid.out = a.out;
  if (grid.algorithms.empty() || grid.machines.empty() || grid.jobs.empty()) {
    throw ConfigError("sweep needs algo, machines and jobs axes");
  }

  const auto rows = harness::sweep(grid);
  const std::string csv = harness::write_csv(rows);
  if (grid.out.empty()) {
    std::cout << csv;
  } else {
    write_file(grid.out, csv);
    std::cerr << rows.size() << " rows -> " << grid.out << '\n';
  }
  return harness::exit_status(rows);
}

struct VerifyArgs {
  std::string algo;
  int machines = 0;
  std::string jobs;
  int f = 0;
  std::vector<std::uint64_t> seeds;
  std::uint64_t node_cap = oracle::SearchOptions{}.node_cap;
  bool no_memo = false;
};

int cmd_verify(const VerifyArgs& a) {
  const auto algorithm = algorithms::parse_algorithm(a.algo);
  const JobSet jobs = harness::generate_jobs(harness::parse_jobs_spec(a.jobs), 0);
  oracle::SearchResult result;
  if (algorithm == algorithms::Algorithm::RanScaTri) {
    std::vector<std::uint64_t> seeds = a.seeds;
    if (seeds.empty()) seeds = harness::expand_seeds(20, 0);
    result = oracle::enumerate_schedules(algorithm, a.machines, jobs, a.f, seeds);
  } else {
    oracle::SearchOptions options;
    options.node_cap = a.node_cap;
    options.memoize = !a.no_memo;
    result = oracle::exhaustive_worst_case(algorithm, a.machines, jobs, a.f, options);
  }
  std::cout << "max_work=" << result.max_work
            << " all_reliable=" << (result.all_reliable ? "true" : "false")
            << " nodes=" << result.nodes << " leaves=" << result.leaves << '\n';
  return result.all_reliable ? kExitOk : kExitUnreliable;
}

struct MixArgs {
  int scale = 0;
  std::int64_t L = 0;
  int m = 0;
  int M = 0;
  int trials = 200;
  std::uint64_t seed = 0;
};

struct TailArgs {
  std::int64_t M = 0;
  std::int64_t leaders = 0;
  std::int64_t crashed = 0;
  std::int64_t threshold = 0;
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
};

struct FitArgs {
  std::string in;
  std::vector<std::string> kinds;
  std::string algo;
};

int cmd_fit(const FitArgs& a) {
  std::ifstream in(a.in);
  if (!in) throw ConfigError("cannot open '" + a.in + "'");
  const auto rows = harness::read_csv(in);
  std::vector<oracle::FitRun> runs;
  std::size_t skipped = 0;
  for (const auto& row : rows) {
    if (!a.algo.empty() && row.algo != a.algo) continue;
    if (!row.reliable) {
      ++skipped;
      continue;
    }
    oracle::BoundParams p;
    p.m = row.m;
    p.n = row.n;
    p.L = row.L;
    p.alpha = row.alpha;
    p.f = row.f;
    runs.push_back({row.work, p});
  }
  if (runs.empty()) throw ConfigError("no reliable rows to fit");
  std::vector<std::string> kinds = a.kinds;
  if (kinds.empty()) kinds = {"pre", "nonpre", "rand"};
  std::cout << "kind,C,spread,runs,skipped\n";
  for (const auto& name : kinds) {
    const auto kind = oracle::parse_bound_kind(name);
    const auto ratios = oracle::fit_ratios(kind, runs);
    std::cout << oracle::to_string(kind) << ',' << oracle::fit_constant(kind, runs) << ','
              << oracle::spread(ratios) << ',' << runs.size() << ',' << skipped << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crash-prone machines scheduling jobs over a shared channel"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run one scenario and print its CSV row");
  run_cmd->add_option("--config", run.config, "JSON scenario with a single cell");
  run_cmd->add_option("--algo", run.algo, "scatri | deftri | ranscatri");
  run_cmd->add_option("--mode", run.mode, "preemptive | non-preemptive");
  run_cmd->add_option("--machines", run.machines, "machine count m");
  run_cmd->add_option("--jobs", run.jobs, "unit:n, equal:n,l, one_long:n,alpha, uniform:n,lo,hi, lengths:...");
  run_cmd->add_option("--adversary", run.adversary, "none | silencer | leader_hunter | schedule:FILE | random:P[:SEED]");
  run_cmd->add_option("--f", run.f, "crash budget");
  run_cmd->add_option("--seed", run.seed, "run seed");
  run_cmd->add_option("--round-limit", run.round_limit, "safety cutoff (0 = default)");
  run_cmd->add_option("--out", run.out, "write the CSV here instead of stdout");
  run_cmd->add_option("--trace", run.trace, "write the round-by-round trace here");
  run_cmd->add_option("--plans", run.plans, "write every epoch plan here");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a grid of scenarios into CSV");
  sweep_cmd->add_option("--config", sweep.config, "JSON grid");
  sweep_cmd->add_option("--algo", sweep.algo, "algorithms")->delimiter(',');
  sweep_cmd->add_option("--mode", sweep.mode, "preemptive | non-preemptive");
  sweep_cmd->add_option("--machines", sweep.machines, "machine counts")->delimiter(',');
  sweep_cmd->add_option("--jobs", sweep.jobs, "job spec; repeat for several");
  sweep_cmd->add_option("--adversary", sweep.adversary, "adversary; repeat for several");
  sweep_cmd->add_option("--f", sweep.f, "crash budgets")->delimiter(',');
  sweep_cmd->add_option("--seeds", sweep.seeds, "explicit seeds")->delimiter(',');
  sweep_cmd->add_option("--seed-count", sweep.seed_count, "seeds base..base+count-1");
  sweep_cmd->add_option("--seed-base", sweep.seed_base, "first seed for --seed-count");
  sweep_cmd->add_option("--round-limit", sweep.round_limit, "safety cutoff (0 = default)");
  sweep_cmd->add_option("--out", sweep.out, "CSV path (stdout if absent)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Exhaustive adversary search on a tiny instance");
  verify_cmd->add_option("--algo", verify.algo, "algorithm")->required();
  verify_cmd->add_option("--machines", verify.machines, "machine count")->required();
  verify_cmd->add_option("--jobs", verify.jobs, "job spec")->required();
  verify_cmd->add_option("--f", verify.f, "crash budget");
  verify_cmd->add_option("--seeds", verify.seeds, "ranscatri seeds (default 0..19)")->delimiter(',');
  verify_cmd->add_option("--node-cap", verify.node_cap, "search node limit");
  verify_cmd->add_flag("--no-memo", verify.no_memo, "disable state merging");

  auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo checks of the randomized subroutines");
  mc_cmd->require_subcommand(1);
  MixArgs mix;
  auto* mix_cmd = mc_cmd->add_subcommand("mix", "Mix-And-Test success rate");
  mix_cmd->add_option("--scale", mix.scale, "scale index i");
  mix_cmd->add_option("--L", mix.L, "total task count")->required();
  mix_cmd->add_option("--m", mix.m, "machine count")->required();
  mix_cmd->add_option("--M", mix.M, "operational machines")->required();
  mix_cmd->add_option("--trials", mix.trials, "trials");
  mix_cmd->add_option("--seed", mix.seed, "seed");
  TailArgs tail;
  auto* tail_cmd = mc_cmd->add_subcommand("tail", "Hypergeometric tail of crashed leaders");
  tail_cmd->add_option("--M", tail.M, "population")->required();
  tail_cmd->add_option("--leaders", tail.leaders, "leaders drawn")->required();
  tail_cmd->add_option("--crashed", tail.crashed, "crashed machines")->required();
  tail_cmd->add_option("--threshold", tail.threshold, "crashed-leader threshold")->required();
  tail_cmd->add_option("--samples", tail.samples, "samples");
  tail_cmd->add_option("--seed", tail.seed, "seed");

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit bound constants over a result CSV");
  fit_cmd->add_option("--in", fit.in, "result CSV")->required();
  fit_cmd->add_option("--kind", fit.kinds, "pre | nonpre | rand (default all)")->delimiter(',');
  fit_cmd->add_option("--algo", fit.algo, "only rows of this algorithm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*verify_cmd) return cmd_verify(verify);
    if (*mix_cmd) {
      const auto e = oracle::mc_mix_and_test(mix.scale, mix.L, mix.m, mix.M, mix.trials, mix.seed);
      std::cout << oracle::mc_csv_header() << '\n' << oracle::mc_csv_row(e) << '\n';
      return kExitOk;
    }
    if (*tail_cmd) {
      const auto e = oracle::mc_hypergeometric_tail(tail.M, tail.leaders, tail.crashed,
                                                    tail.threshold, tail.samples, tail.seed);
      std::cout << oracle::mc_csv_header() << '\n' << oracle::mc_csv_row(e) << '\n';
      return kExitOk;
    }
    if (*fit_cmd) return cmd_fit(fit);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const RoundLimitExceeded& e) {
    // A run that never halts is a reliability failure.
    std::cerr << "error: " << e.what() << '\n';
    return kExitUnreliable;
  } catch (const oracle::SearchLimitExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
