// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "macsched/core/errors.hpp"
#include "macsched/harness/jobs.hpp"
#include "macsched/harness/scenario.hpp"

using namespace macsched;
using namespace macsched::harness;
using algorithms::Algorithm;

namespace {

std::vector<int> lengths_of(const JobSet& jobs) {
  std::vector<int> out;
  for (const auto& job : jobs.jobs()) out.push_back(job.length);
  return out;
}

Scenario scenario(Algorithm a, int m, const std::string& jobs,
                  const std::string& adversary = "none", int f = 0,
                  std::uint64_t seed = 1) {
  Scenario s;
  s.algorithm = a;
  s.machines = m;
  s.jobs = parse_jobs_spec(jobs);
  s.adversary = adversary;
  s.f = f;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("job generators") {
  const auto unit = generate_jobs(parse_jobs_spec("unit:3"), 0);
  CHECK(lengths_of(unit) == std::vector<int>{1, 1, 1});
  CHECK(unit.total_length() == 3);
  CHECK(unit.max_length() == 1);

  const auto one_long = generate_jobs(parse_jobs_spec("one_long:4,7"), 0);
  CHECK(lengths_of(one_long) == std::vector<int>{1, 1, 1, 7});
  CHECK(one_long.total_length() == 10);
  CHECK(one_long.max_length() == 7);

  CHECK(lengths_of(generate_jobs(parse_jobs_spec("equal:2,5"), 0)) == std::vector<int>{5, 5});
  CHECK(lengths_of(generate_jobs(parse_jobs_spec("lengths:3,1,2"), 0)) ==
        std::vector<int>{3, 1, 2});

  const auto spec = parse_jobs_spec("uniform:100,1,8");
  const auto a = generate_jobs(spec, 42);
  CHECK(a == generate_jobs(spec, 42));
  CHECK(a.n() == 100);
  for (int len : lengths_of(a)) CHECK((len >= 1 && len <= 8));
  CHECK_FALSE(a == generate_jobs(spec, 43));
  CHECK(spec.text() == "uniform:100,1,8");
}

TEST_CASE("job generator errors") {
  for (const char* bad : {"unit:0", "equal:3,0", "one_long:0,4", "one_long:3,0",
                          "uniform:5,4,2", "uniform:5,0,2"}) {
    CHECK_THROWS_AS(generate_jobs(parse_jobs_spec(bad), 0), ConfigError);
  }
  for (const char* bad : {"unit", "unit:1,2", "zipf:3", "equal:3", "unit:x"}) {
    CHECK_THROWS_AS(parse_jobs_spec(bad), ConfigError);
  }
}

TEST_CASE("run_once rows") {
  const auto sca = run_once(scenario(Algorithm::ScaTri, 3, "unit:6"));
  CHECK(sca.work == 9);
  CHECK(sca.reliable);
  CHECK(sca.n == 6);
  CHECK(sca.L == 6);
  CHECK(sca.alpha == 1);
  CHECK(sca.adversary == "none");

  const auto def = run_once(scenario(Algorithm::DefTri, 2, "equal:3,2"));
  CHECK(def.work == 8);
  CHECK(def.algo == "deftri");

  auto ran_row = run_once(scenario(Algorithm::RanScaTri, 2, "unit:9"));
  auto sca_row = run_once(scenario(Algorithm::ScaTri, 2, "unit:9"));
  CHECK(ran_row.algo == "ranscatri");
  ran_row.algo = sca_row.algo;
  CHECK(ran_row == sca_row);
}

TEST_CASE("adversary strings") {
  CHECK(parse_adversary("silencer", 2, 4, 0).kind == adversary::Kind::Silencer);
  const auto random = parse_adversary("random:0.25", 2, 4, 7);
  CHECK(random.probability == 0.25);
  CHECK(random.seed == parse_adversary("random:0.25", 2, 4, 7).seed);
  CHECK(random.seed != parse_adversary("random:0.25", 2, 4, 8).seed);
  CHECK(parse_adversary("random:0.25:99", 2, 4, 7).seed == 99);
  CHECK_THROWS_AS(parse_adversary("random:2", 2, 4, 0), ConfigError);
  CHECK_THROWS_AS(parse_adversary("silencer:3", 2, 4, 0), ConfigError);
  CHECK_THROWS_AS(parse_adversary("schedule", 2, 4, 0), ConfigError);
  CHECK_THROWS_AS(parse_adversary("gremlin", 2, 4, 0), ConfigError);

  const std::string path = "harness_test_schedule.txt";
  {
    std::ofstream out(path);
    out << "1,3\n2,5\n";
  }
  const auto fixed = parse_adversary("schedule:" + path, 2, 4, 0);
  CHECK(fixed.schedule.size() == 2);
  CHECK_THROWS_AS(parse_adversary("schedule:" + path, 1, 4, 0), ConfigError);
  const auto row = run_once(scenario(Algorithm::ScaTri, 4, "unit:12", "schedule:" + path, 2));
  CHECK(row.reliable);
  std::remove(path.c_str());
}

TEST_CASE("invalid scenarios are configuration errors") {
  CHECK_THROWS_AS(build_env(scenario(Algorithm::ScaTri, 3, "unit:3", "none", 3)), ConfigError);
  CHECK_THROWS_AS(build_env(scenario(Algorithm::RanScaTri, 3, "unit:3", "silencer", 1)),
                  ConfigError);
  auto s = scenario(Algorithm::DefTri, 3, "unit:3");
  s.mode = Mode::Preemptive;
  CHECK_THROWS_AS(build_env(s), ConfigError);
  CHECK_THROWS_AS(build_env(scenario(Algorithm::ScaTri, 0, "unit:3")), ConfigError);
}

TEST_CASE("CSV rows round-trip") {
  const auto row = run_once(scenario(Algorithm::ScaTri, 4, "uniform:5,1,4", "random:0.1", 2, 3));
  CHECK(csv_header() ==
        "algo,m,n,L,alpha,f,adversary,seed,work,rounds,reliable,bound_pre,bound_nonpre,"
        "bound_rand");
  CHECK(parse_csv_row(to_csv(row)) == row);
  std::istringstream in(write_csv(std::vector<ResultRow>{row, row}));
  CHECK(read_csv(in).size() == 2);
  std::istringstream wrong("algo,m\n");
  CHECK_THROWS_AS(read_csv(wrong), ConfigError);
  CHECK_THROWS_AS(parse_csv_row("a,b"), ConfigError);
}

TEST_CASE("grid config parsing") {
  const auto grid = parse_grid(R"({"algo": ["scatri", "deftri"], "machines": [2, 3],
      "jobs": "unit:4", "f": [0, 1], "seed_count": 3, "seed_base": 10})");
  CHECK(grid.algorithms.size() == 2);
  CHECK(grid.machines == std::vector<int>{2, 3});
  CHECK(grid.jobs.size() == 1);
  CHECK(grid.seeds == std::vector<std::uint64_t>{10, 11, 12});
  CHECK(grid.adversaries == std::vector<std::string>{"none"});
  CHECK_THROWS_AS(parse_grid(R"({"algo": "scatri", "machine": 3})"), ConfigError);
  CHECK_THROWS_AS(parse_grid(R"({"algo": 3})"), ConfigError);
  CHECK_THROWS_AS(parse_grid("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_grid(R"({"seed_base": 4})"), ConfigError);
  CHECK_THROWS_AS(expand(parse_grid(R"({"algo": "scatri", "machines": 2, "jobs": "unit:2"})")),
                  ConfigError);
}

TEST_CASE("sweep order, size and determinism") {
  SweepGrid grid;
  grid.algorithms = {Algorithm::ScaTri};
  grid.machines = {4, 2};
  grid.jobs = {parse_jobs_spec("unit:8"), parse_jobs_spec("unit:3")};
  grid.seeds = {5, 6, 7};
  const auto rows = sweep(grid);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0].m == 4);
  CHECK(rows[0].L == 8);
  CHECK(rows[0].seed == 5);
  CHECK(rows[2].seed == 7);
  CHECK(rows[3].L == 3);
  CHECK(rows[6].m == 2);
  CHECK(write_csv(rows) == write_csv(sweep(grid)));

  // A sweep is the concatenation of its cells.
  const auto cells = expand(grid);
  for (std::size_t k = 0; k < cells.size(); ++k) CHECK(run_once(cells[k]) == rows[k]);

  grid.f = {0, 4};
  CHECK_THROWS_AS(sweep(grid), ConfigError);
}

TEST_CASE("exit status reflects unreliable rows") {
  std::vector<ResultRow> rows(3);
  for (auto& row : rows) row.reliable = true;
  CHECK(exit_status(rows) == kExitOk);
  rows[1].reliable = false;
  CHECK(exit_status(rows) == kExitUnreliable);
}

TEST_CASE("plan log lists every epoch") {
  CHECK(plan_log(scenario(Algorithm::ScaTri, 3, "unit:6")) ==
        "# epoch 1 round 0\n"
        "plan preemptive d=3 phi=1 rounds=3\n"
        "column 1 machine 1 cap 1 slot 1: 1[1-1]\n"
        "column 2 machine 2 cap 2 slot 2: 2[1-1] 5[1-1]\n"
        "column 3 machine 3 cap 3 slot 3: 3[1-1] 4[1-1] 6[1-1]\n");

  const std::string log = plan_log(scenario(Algorithm::ScaTri, 8, "lengths:20"));
  std::size_t epochs = 0;
  for (std::size_t at = log.find("# epoch"); at != std::string::npos;
       at = log.find("# epoch", at + 1)) {
    ++epochs;
  }
  CHECK(epochs == 20);
  CHECK(log.find("d=8") == std::string::npos);
}
