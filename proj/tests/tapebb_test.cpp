// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <numeric>
#include <random>

#include "macsched/core/errors.hpp"
#include "macsched/tapebb/epoch.hpp"
#include "macsched/tapebb/plan.hpp"
#include "support.hpp"

using namespace macsched;
using namespace macsched::tapebb;
using namespace macsched::testing;

namespace {

std::vector<TaskSpan> segs(const TrianglePlan& plan, int column) {
  return plan.columns.at(static_cast<std::size_t>(column - 1)).segments;
}

int confirmed_units(const EpochOutcome& outcome) {
  int total = 0;
  for (const auto& span : outcome.confirmed) total += span.size();
  return total;
}

}  // namespace

TEST_CASE("preemptive packing prefers short jobs and trims the longest") {
  const auto machines = ids(3);
  const auto plan = pack_preemptive(table_of({1, 2, 4}), machines, 3);
  CHECK(segs(plan, 1) == std::vector<TaskSpan>{{1, 1, 1}});
  CHECK(segs(plan, 2) == std::vector<TaskSpan>{{2, 1, 2}});
  CHECK(segs(plan, 3) == std::vector<TaskSpan>{{3, 1, 3}});
  CHECK(plan.assigned_units() == 6);
  CHECK_NOTHROW(check_plan(plan, table_of({1, 2, 4})));
}

TEST_CASE("preemptive packing with fewer jobs than columns") {
  const auto machines = ids(2);
  const auto plan = pack_preemptive(table_of({1}), machines, 2);
  CHECK(segs(plan, 1) == std::vector<TaskSpan>{{1, 1, 1}});
  CHECK(segs(plan, 2).empty());
}

TEST_CASE("six unit jobs fill a d=3 triangle") {
  const auto machines = ids(3);
  const auto plan = pack_preemptive(table_of({1, 1, 1, 1, 1, 1}), machines, 3);
  CHECK(segs(plan, 1).size() == 1);
  CHECK(segs(plan, 2).size() == 2);
  CHECK(segs(plan, 3).size() == 3);
  CHECK(plan.assigned_units() == 6);
}

TEST_CASE("residual sweep visits the roomiest column first") {
  // Base layer a, b, c leaves residuals 0, 1, 2. The sweep reaches column 3
  // first and gives it d[1-2]; nothing is left for column 2.
  const auto machines = ids(3);
  const auto plan = pack_preemptive(table_of({1, 1, 1, 5}), machines, 3);
  CHECK(segs(plan, 1) == std::vector<TaskSpan>{{1, 1, 1}});
  CHECK(segs(plan, 2) == std::vector<TaskSpan>{{2, 1, 1}});
  CHECK(segs(plan, 3) == std::vector<TaskSpan>{{3, 1, 1}, {4, 1, 2}});
}

TEST_CASE("preemptive packing resumes a chain where it left off") {
  auto table = table_of({4});
  table[0].next = 3;
  const auto machines = ids(2);
  const auto plan = pack_preemptive(table, machines, 2);
  CHECK(segs(plan, 1) == std::vector<TaskSpan>{{1, 3, 3}});
  CHECK(segs(plan, 2).empty());
}

TEST_CASE("packing argument checks") {
  const auto machines = ids(2);
  CHECK_THROWS(pack_preemptive(table_of({1}), machines, 3));
  CHECK_THROWS(pack_preemptive(table_of({1}), machines, 0));
  CHECK_THROWS(pack_nonpreemptive(table_of({1}), machines, 2, 0));
  CHECK_THROWS(pack_longjob({}, machines, 1));
  const auto empty = pack_preemptive({}, machines, 2);
  CHECK(empty.empty());
  CHECK(empty.columns.size() == 2);
}

TEST_CASE("non-preemptive packing places whole jobs only") {
  const auto machines = ids(2);
  const auto fits = pack_nonpreemptive(table_of({1, 3}), machines, 2, 2);
  CHECK(fits.columns[0].capacity == 2);
  CHECK(fits.columns[1].capacity == 4);
  CHECK(segs(fits, 1) == std::vector<TaskSpan>{{1, 1, 1}});
  CHECK(segs(fits, 2) == std::vector<TaskSpan>{{2, 1, 3}});

  const auto deferred = pack_nonpreemptive(table_of({5}), machines, 2, 2);
  CHECK(deferred.empty());
}

TEST_CASE("equal jobs of phase length stack j per column") {
  const int d = 4;
  const int phi = 3;
  const auto machines = ids(d);
  const auto plan = pack_nonpreemptive(table_of(std::vector<int>(10, phi)), machines, d, phi);
  for (int j = 1; j <= d; ++j) CHECK(segs(plan, j).size() == static_cast<std::size_t>(j));
}

TEST_CASE("long-job slots") {
  {
    const auto machines = ids(4);
    const auto plan = pack_longjob(table_of({8}), machines, 1);
    REQUIRE(plan.columns.size() == 1);
    CHECK(plan.columns[0].machine == 1);
    CHECK(plan.columns[0].slot == 8);
    CHECK(plan.epoch_rounds() == 8);
  }
  {
    const auto machines = ids(2);
    const auto plan = pack_longjob(table_of({2, 2}), machines, 2);
    CHECK(plan.columns[0].slot == 3);
    CHECK(plan.columns[1].slot == 2);
    CHECK(plan.epoch_rounds() == 3);
  }
  {
    const auto machines = ids(1);
    const auto plan = pack_longjob(table_of({1}), machines, 1);
    CHECK(plan.columns[0].slot == 1);
    CHECK(plan.epoch_rounds() == 1);
  }
}

TEST_CASE("long-job slots are distinct and within length + d") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 9);
    std::vector<int> lengths;
    for (int k = 0; k < n; ++k) lengths.push_back(1 + static_cast<int>(gen() % 12));
    const int m = 1 + static_cast<int>(gen() % 9);
    const int d = std::min(n, m);
    const auto machines = ids(m);
    const auto table = table_of(lengths);
    const auto plan = pack_longjob(table, machines, d);
    std::vector<int> slots;
    for (const auto& c : plan.columns) {
      REQUIRE(c.segments.size() == 1);
      const int len = c.segments[0].size();
      CHECK(c.slot >= len);
      CHECK(c.slot < len + d);
      slots.push_back(c.slot);
    }
    std::sort(slots.begin(), slots.end());
    CHECK(std::adjacent_find(slots.begin(), slots.end()) == slots.end());
    CHECK_NOTHROW(check_plan(plan, table));
  }
}

TEST_CASE("plan dump") {
  const auto machines = ids(3);
  const auto plan = pack_preemptive(table_of({1, 2, 4}), machines, 3);
  CHECK(dump(plan) ==
        "plan preemptive d=3 phi=1 rounds=3\n"
        "column 1 machine 1 cap 1 slot 1: 1[1-1]\n"
        "column 2 machine 2 cap 2 slot 2: 2[1-2]\n"
        "column 3 machine 3 cap 3 slot 3: 3[1-3]\n");
}

TEST_CASE("failure-free epoch confirms the whole triangle at m d phi work") {
  const auto machines = ids(3);
  const auto plan = pack_preemptive(table_of({1, 1, 1, 1, 1, 1}), machines, 3);
  const auto run = run_epoch(plan, 3);
  CHECK(confirmed_units(run.outcome) == 6);
  CHECK(run.work == 9);
  CHECK(run.outcome.detected_crashes.empty());
  CHECK(run.outcome.rounds_elapsed == 3);
}

TEST_CASE("a column owner crashed before its slot is detected") {
  const auto machines = ids(3);
  const auto plan = pack_preemptive(table_of({1, 1, 1, 1, 1, 1}), machines, 3);
  const auto run = run_epoch(
      plan, 3,
      [](const Observation& obs) {
        return obs.round == 1 ? std::vector<MachineId>{2} : std::vector<MachineId>{};
      },
      1);
  CHECK(run.outcome.detected_crashes == std::vector<MachineId>{2});
  CHECK(confirmed_units(run.outcome) == 4);
  for (const auto& span : run.outcome.confirmed) {
    const auto col2 = segs(plan, 2);
    CHECK(std::find(col2.begin(), col2.end(), span) == col2.end());
  }
}

TEST_CASE("empty plan idles for d phi rounds") {
  const auto machines = ids(2);
  const auto plan = pack_preemptive({}, machines, 2);
  const auto run = run_epoch(plan, 2);
  CHECK(run.outcome.confirmed.empty());
  CHECK(run.outcome.detected_crashes.empty());
  CHECK(run.work == 2 * 2);
}

TEST_CASE("an unscheduled sender is a protocol violation") {
  const auto machines = ids(2);
  EpochExecution exec(pack_preemptive(table_of({1, 1, 1}), machines, 2));
  CHECK_THROWS_AS(exec.observe({Delivered{2, elect()}}), ProtocolViolation);
}

TEST_CASE("triangle capacity and work over d and phi") {
  for (int d = 1; d <= 8; ++d) {
    for (int phi = 1; phi <= 4; ++phi) {
      const int m = d + 1;
      const int cap = phi * d * (d + 1) / 2;
      const auto machines = ids(m);
      for (auto plan : {pack_preemptive(table_of(std::vector<int>(cap + 3, 1)), machines, d, phi),
                        pack_nonpreemptive(table_of(std::vector<int>(cap, 1)), machines, d, phi)}) {
        const auto run = run_epoch(plan, m);
        CHECK(confirmed_units(run.outcome) == cap);
        CHECK(run.work == static_cast<Work>(m) * d * phi);
      }
    }
  }
}

TEST_CASE("packing invariants on random task tables") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = static_cast<int>(gen() % 12);
    std::vector<int> lengths;
    for (int k = 0; k < n; ++k) lengths.push_back(1 + static_cast<int>(gen() % 10));
    auto table = table_of(lengths);
    for (auto& entry : table) entry.next = 1 + static_cast<int>(gen() % entry.length);
    const int m = 1 + static_cast<int>(gen() % 8);
    const int d = 1 + static_cast<int>(gen() % m);
    const int phi = 1 + static_cast<int>(gen() % 4);
    const auto machines = ids(m);
    const auto pre = pack_preemptive(table, machines, d, phi);
    const auto non = pack_nonpreemptive(table, machines, d, phi);
    CHECK_NOTHROW(check_plan(pre, table));
    CHECK_NOTHROW(check_plan(non, table));
    CHECK(pre == pack_preemptive(table, machines, d, phi));
    // Preemptive packing fills the triangle whenever the tasks exist.
    const std::int64_t cap = static_cast<std::int64_t>(phi) * d * (d + 1) / 2;
    const std::int64_t outstanding = outstanding_tasks(table);
    if (outstanding >= cap && n >= d) CHECK(pre.assigned_units() <= cap);
    CHECK(pre.assigned_units() <= std::min(cap, outstanding));
    for (const auto& c : non.columns) {
      for (const auto& s : c.segments) {
        const auto& entry = *std::find_if(table.begin(), table.end(),
                                          [&](const JobProgress& e) { return e.id == s.job; });
        CHECK(s.first == entry.next);
        CHECK(s.last == entry.length);
      }
    }
  }
}
