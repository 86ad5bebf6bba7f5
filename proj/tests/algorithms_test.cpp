// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "macsched/algorithms/randomized.hpp"
#include "macsched/algorithms/scheduler.hpp"
#include "macsched/core/errors.hpp"
#include "support.hpp"

using namespace macsched;
using namespace macsched::algorithms;
using namespace macsched::testing;
using adversary::Kind;

TEST_CASE("scatri hand-simulated instances") {
  // d=3 holds 6 tasks: one epoch on 3 machines.
  auto r = simulate(env_for(Algorithm::ScaTri, 3, {1, 1, 1, 1, 1, 1}), true);
  CHECK(r.work == 9);
  CHECK(r.verdict.reliable);

  // d=4 needs 10 tasks; d=2 needs 3, so one 2-round epoch on 4 machines.
  r = simulate(env_for(Algorithm::ScaTri, 4, {1, 1, 1}), true);
  CHECK(r.work == 8);
  CHECK(r.rounds == 2);
  CHECK(r.verdict.reliable);

  // One job never spans columns: d shrinks 8 -> 1 and each 1-round epoch
  // confirms one task.
  r = simulate(env_for(Algorithm::ScaTri, 8, {20}), true);
  CHECK(r.rounds == 20);
  CHECK(r.work == 160);
  CHECK(r.verdict.reliable);

  // d=4 would hold all 10 tasks but only 2 jobs exist, so d=2: three 2-round
  // epochs confirm 3+3+3 tasks, then the last job runs alone at d=1.
  r = simulate(env_for(Algorithm::ScaTri, 4, {5, 5}), true);
  CHECK(r.rounds == 7);
  CHECK(r.work == 28);
  CHECK(r.verdict.reliable);

  r = simulate(env_for(Algorithm::ScaTri, 5, {}));
  CHECK(r.work == 0);
  CHECK(r.rounds == 0);
  CHECK(r.verdict.reliable);
}

TEST_CASE("deftri hand-simulated instances") {
  // d=2, three jobs >= 3, phi=2, caps 2 and 4.
  auto r = simulate(env_for(Algorithm::DefTri, 2, {2, 2, 2}), true);
  CHECK(r.work == 8);
  CHECK(r.verdict.reliable);

  // Shrinks to d=2, then 1 job < 3 with 8 tasks >= 3: one long job on
  // machine 1 broadcast at round 8 while all four machines listen.
  r = simulate(env_for(Algorithm::DefTri, 4, {8}), true);
  CHECK(r.rounds == 8);
  CHECK(r.work == 32);
  REQUIRE(r.trace.rounds.back().outcome.delivered);
  CHECK(r.trace.rounds.back().outcome.delivered->sender == 1);
  CHECK(r.verdict.reliable);

  // Two jobs at d=2 are not fewer than the columns, so no long-job epoch: d=1
  // with phi=3 runs one whole job per 3-round epoch.
  r = simulate(env_for(Algorithm::DefTri, 4, {3, 3}), true);
  CHECK(r.rounds == 6);
  CHECK(r.work == 24);
  CHECK(r.verdict.reliable);

  r = simulate(env_for(Algorithm::DefTri, 3, {}));
  CHECK(r.work == 0);
}

TEST_CASE("configuration checks") {
  auto env = env_for(Algorithm::DefTri, 2, {1});
  env.mode = Mode::Preemptive;
  CHECK_THROWS_AS(simulate(env), ConfigError);
  env = env_for(Algorithm::ScaTri, 2, {1});
  env.mode = Mode::NonPreemptive;
  CHECK_THROWS_AS(simulate(env), ConfigError);
  CHECK_THROWS_AS(simulate(env_for(Algorithm::ScaTri, 2, {1}, adversary_of(Kind::None, 2))),
                  ConfigError);
  CHECK_THROWS_AS(
      simulate(env_for(Algorithm::RanScaTri, 4, {1}, adversary_of(Kind::Silencer, 1))),
      ConfigError);
  CHECK_THROWS_AS(
      simulate(env_for(Algorithm::RanScaTri, 4, {1}, adversary_of(Kind::LeaderHunter, 1))),
      ConfigError);
  env = env_for(Algorithm::ScaTri, 3, std::vector<int>(40, 1));
  env.round_limit = 3;
  CHECK_THROWS_AS(simulate(env), RoundLimitExceeded);
  CHECK(default_round_limit(env_for(Algorithm::ScaTri, 2, {3, 1})) == 64 * (4 + 6 + 3));
}

TEST_CASE("mix_and_test on a single machine hears itself once") {
  // coin 1, one tosser: round 1 is a lone broadcast, then nobody is left.
  const auto run = run_mix_and_test(0, 4, 1, 1, 99);
  CHECK(run.heard == 1);
  CHECK_FALSE(run.result);
  const auto quarter = run_mix_and_test(2, 4, 4, 1, 5);
  CHECK(quarter.heard == 1);
  CHECK_FALSE(quarter.result);
  CHECK(quarter.work == 2 + 2);
}

TEST_CASE("mix_and_test elects leaders to the front in election order") {
  const int m = 32;
  const std::int64_t L = 16;
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    LocalView view = LocalView::initial(m, JobSet::from_lengths(std::vector<int>(16, 1)));
    MixAndTest mix(0, L, m, view);
    std::vector<MachineId> elected;
    for (Round r = 1; !mix.finished(); ++r) {
      std::vector<TransmissionIntent> intents;
      for (MachineId v : view.machines) {
        if (auto p = mix.intent(v, view, seed, r)) intents.push_back({v, *p});
      }
      const auto outcome = resolve_channel(intents);
      if (outcome.delivered) elected.insert(elected.begin(), outcome.delivered->sender);
      mix.observe(outcome, view);
      CHECK(view.coin == std::max<std::int64_t>(m - static_cast<int>(elected.size()), 1));
    }
    CHECK(view.leaders == elected);
    CHECK(std::equal(elected.begin(), elected.end(), view.machines.begin()));
    if (mix.succeeded()) {
      ++successes;
      CHECK(static_cast<std::int64_t>(elected.size()) >= ceil_sqrt(L));
    }
  }
  CHECK(successes > 0);
}

TEST_CASE("mix_and_test coin floors at one") {
  LocalView view = LocalView::initial(3, JobSet::from_lengths(std::vector<int>{1}));
  MixAndTest mix(1, 100, 3, view);  // coin 2
  CHECK(view.coin == 2);
  for (MachineId v : {1, 2, 3}) mix.observe({Delivered{v, Payload{PayloadKind::Elect, {}}}}, view);
  CHECK(view.coin == 1);
  CHECK_THROWS_AS(mix.observe({Delivered{1, Payload{PayloadKind::Elect, {}}}}, view),
                  ProtocolViolation);
}

TEST_CASE("confirm_work") {
  const auto one = run_confirm_work(1, 1, 3);
  CHECK(one.rounds == 1);
  CHECK(one.all_halted_together);

  for (int m : {8, 64, 512}) {
    double total = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
      const auto run = run_confirm_work(m, m, static_cast<std::uint64_t>(t));
      CHECK(run.all_halted_together);
      CHECK(run.work == run.rounds * m);
      total += static_cast<double>(run.rounds);
    }
    CHECK(total / trials <= 3.0 * (ceil_log2(m) + 1));
  }
}

TEST_CASE("ranscatri branch selection") {
  CHECK(randomized_branch(2, 9) == RandomizedBranch::DelegateScaTri);
  CHECK(randomized_branch(16, 4) == RandomizedBranch::SilentAllTasks);
  CHECK(randomized_branch(3, 1) == RandomizedBranch::SilentAllTasks);
  CHECK(randomized_branch(64, 3600) == RandomizedBranch::MixAndTestLoop);
  CHECK(std::log2(64.0) <= std::exp(60.0 / 32));
}

TEST_CASE("ranscatri delegates to scatri when m^2 <= L") {
  const std::vector<int> nine(9, 1);
  const auto ran = simulate(env_for(Algorithm::RanScaTri, 2, nine, {}, 5));
  const auto sca = simulate(env_for(Algorithm::ScaTri, 2, nine, {}, 5));
  CHECK(export_trace(ran.trace) == export_trace(sca.trace));
  CHECK(ran.work == sca.work);
}

TEST_CASE("ranscatri silent branch works M*L rounds without transmitting") {
  for (auto [m, L] : {std::pair{16, 4}, std::pair{3, 1}}) {
    const auto r = simulate(env_for(Algorithm::RanScaTri, m, std::vector<int>(L, 1), {}, 8), true);
    CHECK(r.verdict.reliable);
    Work silent = 0;
    for (int k = 0; k < L; ++k) {
      CHECK(r.trace.rounds[k].intents.empty());
      silent += r.trace.rounds[k].work;
    }
    CHECK(silent == static_cast<Work>(m) * L);
    CHECK(r.trace.rounds.back().outcome.delivered);
  }
}

TEST_CASE("ranscatri main branch on m=64, L=3600") {
  const auto r = simulate(env_for(Algorithm::RanScaTri, 64, std::vector<int>(3600, 1), {}, 3));
  CHECK(r.verdict.reliable);
  CHECK(r.trace.rounds.front().intents.size() > 0);
}

TEST_CASE("scatri triangle shrinks by at most a factor of four") {
  for (int m = 1; m <= 2000; ++m) {
    for (int i = 0; ceil_div_pow2(m, i) > 1; ++i) {
      const double ratio = static_cast<double>(triangle(ceil_div_pow2(m, i + 1))) /
                           static_cast<double>(triangle(ceil_div_pow2(m, i)));
      CHECK(ratio >= 0.25);
    }
  }
}

namespace {

adversary::AdversarySpec random_adversary(std::mt19937_64& gen, Algorithm a, int m) {
  const int f = static_cast<int>(gen() % static_cast<unsigned>(m));
  std::vector<Kind> kinds{Kind::None, Kind::Random};
  if (a != Algorithm::RanScaTri) {
    kinds.push_back(Kind::Silencer);
    kinds.push_back(Kind::LeaderHunter);
  }
  auto spec = adversary_of(kinds[gen() % kinds.size()], f);
  spec.probability = 0.05;
  spec.seed = gen();
  return spec;
}

}  // namespace

TEST_CASE("sampled runs are reliable, consistent and make progress") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const auto algorithm = static_cast<Algorithm>(gen() % 3);
    const int m = 1 + static_cast<int>(gen() % 12);
    std::vector<int> lengths;
    const int n = static_cast<int>(gen() % 10);
    for (int k = 0; k < n; ++k) lengths.push_back(1 + static_cast<int>(gen() % 6));
    auto env = env_for(algorithm, m, lengths, random_adversary(gen, algorithm, m), gen());

    SchedulerEngine engine = make_engine(env);
    adversary::Adversary adv(env.adversary, m);
    int epochs = 0;
    std::int64_t tasks = outstanding_tasks(make_task_table(env.jobs));
    std::size_t machines = static_cast<std::size_t>(m);
    while (!engine.finished()) {
      engine.advance_round(adv);
      REQUIRE(views_consistent(engine));
      for (const auto& p : engine.processes()) {
        if (!engine.status(p.id()).running()) continue;
        if (p.epochs_completed() > epochs) {
          CHECK((p.view().tasks < tasks || p.view().machines.size() < machines));
          epochs = p.epochs_completed();
          tasks = p.view().tasks;
          machines = p.view().machines.size();
        }
        break;
      }
    }
    const auto verdict = verify_reliability(engine.trace(), env.jobs, env.mode);
    CHECK(verdict.reliable);
    if (algorithm == Algorithm::DefTri) {
      for (const auto& record : engine.trace().rounds) {
        if (!record.outcome.delivered) continue;
        for (const auto& span : record.outcome.delivered->payload.spans) {
          CHECK(span.first == 1);
          CHECK(span.last == env.jobs.length_of(span.job));
        }
      }
    }
  }
}

TEST_CASE("equal environments give identical traces") {
  auto env = env_for(Algorithm::RanScaTri, 40, std::vector<int>(200, 2), {}, 77);
  env.adversary.kind = Kind::Random;
  env.adversary.budget = 20;
  env.adversary.probability = 0.02;
  env.adversary.seed = 4;
  const auto a = simulate(env);
  const auto b = simulate(env);
  CHECK(a.trace == b.trace);
  CHECK(export_trace(a.trace) == export_trace(b.trace));
}
