// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "macsched/core/errors.hpp"
#include "macsched/harness/jobs.hpp"
#include "macsched/harness/scenario.hpp"
#include "macsched/oracle/bounds.hpp"
#include "macsched/oracle/exhaustive.hpp"
#include "macsched/oracle/montecarlo.hpp"

namespace py = pybind11;
using namespace macsched;

namespace {

harness::Scenario make_scenario(const std::string& algo, int machines,
                                const std::string& jobs, const std::string& adversary,
                                int f, std::uint64_t seed,
                                const std::optional<std::string>& mode,
                                Round round_limit) {
  harness::Scenario s;
  s.algorithm = algorithms::parse_algorithm(algo);
  if (mode) s.mode = parse_mode(*mode);
  s.machines = machines;
  s.jobs = harness::parse_jobs_spec(jobs);
  s.adversary = adversary;
  s.f = f;
  s.seed = seed;
  s.round_limit = round_limit;
  return s;
}

py::dict row_dict(const harness::ResultRow& r) {
  py::dict d;
  d["algo"] = r.algo;
  d["m"] = r.m;
  d["n"] = r.n;
  d["L"] = r.L;
  d["alpha"] = r.alpha;
  d["f"] = r.f;
  d["adversary"] = r.adversary;
  d["seed"] = r.seed;
  d["work"] = r.work;
  d["rounds"] = r.rounds;
  d["reliable"] = r.reliable;
  d["bound_pre"] = r.bound_pre;
  d["bound_nonpre"] = r.bound_nonpre;
  d["bound_rand"] = r.bound_rand;
  return d;
}

py::dict estimate_dict(const oracle::McEstimate& e) {
  py::dict d;
  d["estimate"] = e.estimate;
  d["stderr"] = e.stderr_;
  d["bound"] = e.bound;
  d["samples"] = e.samples;
  return d;
}

}  // namespace

PYBIND11_MODULE(_macsched, m) {
  m.doc() = "Simulator for crash-prone machines scheduling jobs over a shared channel";

  py::register_exception<RoundLimitExceeded>(m, "RoundLimitExceeded", PyExc_RuntimeError);
  py::register_exception<ProtocolViolation>(m, "ProtocolViolation", PyExc_RuntimeError);

  // Keyword set shared by the scenario entry points.
  auto scenario_args = [] {
    return std::make_tuple(py::arg("algo"), py::arg("machines"), py::arg("jobs"),
                           py::arg("adversary") = "none", py::arg("f") = 0,
                           py::arg("seed") = 0, py::arg("mode") = py::none(),
                           py::arg("round_limit") = 0);
  };

  std::apply(
      [&](auto... args) {
        m.def(
            "run",
            [](const std::string& algo, int machines, const std::string& jobs,
               const std::string& adversary, int f, std::uint64_t seed,
               const std::optional<std::string>& mode, Round round_limit) {
              return row_dict(harness::run_once(
                  make_scenario(algo, machines, jobs, adversary, f, seed, mode, round_limit)));
            },
            args..., "Run one scenario; returns the result row as a dict.");
        m.def(
            "trace",
            [](const std::string& algo, int machines, const std::string& jobs,
               const std::string& adversary, int f, std::uint64_t seed,
               const std::optional<std::string>& mode, Round round_limit) {
              const auto run = harness::run_scenario(
                  make_scenario(algo, machines, jobs, adversary, f, seed, mode, round_limit));
              return export_trace(run.result.trace);
            },
            args..., "Run one scenario; returns the `round,event_kind,machine,detail` export.");
        m.def(
            "plans",
            [](const std::string& algo, int machines, const std::string& jobs,
               const std::string& adversary, int f, std::uint64_t seed,
               const std::optional<std::string>& mode, Round round_limit) {
              return harness::plan_log(
                  make_scenario(algo, machines, jobs, adversary, f, seed, mode, round_limit));
            },
            args..., "Run one scenario; returns the dump of every epoch plan.");
      },
      scenario_args());

  m.def(
      "sweep",
      [](const std::string& grid_json) {
        py::list rows;
        for (const auto& row : harness::sweep(harness::parse_grid(grid_json))) {
          rows.append(row_dict(row));
        }
        return rows;
      },
      py::arg("grid_json"), "Run a JSON grid; returns rows in cell order.");
  m.def(
      "sweep_csv",
      [](const std::string& grid_json) {
        return harness::write_csv(harness::sweep(harness::parse_grid(grid_json)));
      },
      py::arg("grid_json"));
  m.def("csv_header", &harness::csv_header);

  m.def(
      "job_lengths",
      [](const std::string& spec, std::uint64_t seed) {
        const JobSet jobs = harness::generate_jobs(harness::parse_jobs_spec(spec), seed);
        std::vector<int> lengths;
        for (const auto& job : jobs.jobs()) {
          lengths.push_back(job.length);
        }
        return lengths;
      },
      py::arg("spec"), py::arg("seed") = 0);

  m.def(
      "verify",
      [](const std::string& algo, int machines, const std::string& jobs, int f,
         std::vector<std::uint64_t> seeds, bool memoize) {
        const auto algorithm = algorithms::parse_algorithm(algo);
        const JobSet set = harness::generate_jobs(harness::parse_jobs_spec(jobs), 0);
        oracle::SearchResult r;
        if (algorithm == algorithms::Algorithm::RanScaTri) {
          if (seeds.empty()) seeds = harness::expand_seeds(20, 0);
          r = oracle::enumerate_schedules(algorithm, machines, set, f, seeds);
        } else {
          oracle::SearchOptions options;
          options.memoize = memoize;
          r = oracle::exhaustive_worst_case(algorithm, machines, set, f, options);
        }
        py::dict d;
        d["max_work"] = r.max_work;
        d["all_reliable"] = r.all_reliable;
        d["nodes"] = r.nodes;
        d["leaves"] = r.leaves;
        return d;
      },
      py::arg("algo"), py::arg("machines"), py::arg("jobs"), py::arg("f") = 0,
      py::arg("seeds") = std::vector<std::uint64_t>{}, py::arg("memoize") = true,
      "Worst case over every adversary within budget on a tiny instance.");

  m.def(
      "bound_eval",
      [](const std::string& kind, int machines, std::int64_t n, std::int64_t L,
         std::int64_t alpha, int f, double C) {
        oracle::BoundParams p{machines, n, L, alpha, f, C};
        return oracle::bound_eval(oracle::parse_bound_kind(kind), p);
      },
      py::arg("kind"), py::arg("m"), py::arg("n"), py::arg("L"), py::arg("alpha"),
      py::arg("f") = 0, py::arg("C") = 1.0);
  m.def(
      "heavy_jobs_check",
      [](const std::vector<int>& lengths) {
        return oracle::heavy_jobs_check(JobSet::from_lengths(lengths));
      },
      py::arg("lengths"));

  m.def(
      "mc_mix_and_test",
      [](int scale, std::int64_t L, int machines, int M, int trials, std::uint64_t seed) {
        return estimate_dict(oracle::mc_mix_and_test(scale, L, machines, M, trials, seed));
      },
      py::arg("scale"), py::arg("L"), py::arg("m"), py::arg("M"), py::arg("trials"),
      py::arg("seed") = 0);
  m.def("mix_and_test_exact", &oracle::mix_and_test_exact, py::arg("scale"), py::arg("L"),
        py::arg("m"), py::arg("M"));
  m.def(
      "mc_hypergeometric_tail",
      [](std::int64_t M, std::int64_t leaders, std::int64_t crashed, std::int64_t threshold,
         std::int64_t samples, std::uint64_t seed) {
        return estimate_dict(
            oracle::mc_hypergeometric_tail(M, leaders, crashed, threshold, samples, seed));
      },
      py::arg("M"), py::arg("leaders"), py::arg("crashed"), py::arg("threshold"),
      py::arg("samples"), py::arg("seed") = 0);
  m.def("hypergeometric_tail_exact", &oracle::hypergeometric_tail_exact, py::arg("M"),
        py::arg("leaders"), py::arg("crashed"), py::arg("threshold"));
}
