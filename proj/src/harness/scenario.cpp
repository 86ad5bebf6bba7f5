// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include "macsched/harness/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "macsched/core/errors.hpp"
#include "macsched/core/rng.hpp"
#include "macsched/oracle/bounds.hpp"

namespace macsched::harness {

namespace {

constexpr std::uint64_t kRandomAdversaryTag = 0xad7e'75a1'0000'0001ull;

std::string format_double(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return ec == std::errc() ? std::string(buffer, end) : std::string("nan");
}

template <class T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError(std::string("bad ") + what + " '" + text + "'");
  }
  return value;
}

double parse_double(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw ConfigError(std::string("bad ") + what + " '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

adversary::AdversarySpec parse_adversary(const std::string& text, int f, int m,
                                         std::uint64_t run_seed) {
  adversary::AdversarySpec spec;
  spec.budget = f;
  const auto colon = text.find(':');
  spec.kind = adversary::parse_kind(text.substr(0, colon));
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  switch (spec.kind) {
    case adversary::Kind::Schedule:
      if (rest.empty()) throw ConfigError("schedule adversary needs a file");
      spec.schedule = adversary::load_schedule_file(rest);
      adversary::validate_schedule(spec.schedule, f, m);
      break;
    case adversary::Kind::Random: {
      const auto parts = split(rest, ':');
      if (parts.empty() || parts.size() > 2) {
        throw ConfigError("random adversary expects random:p[:seed]");
      }
      spec.probability = parse_double(parts[0], "crash probability");
      if (!(spec.probability >= 0 && spec.probability <= 1)) {
        throw ConfigError("crash probability must lie in [0, 1]");
      }
      spec.seed = parts.size() == 2
                      ? parse_number<std::uint64_t>(parts[1], "adversary seed")
                      : mix64(run_seed ^ kRandomAdversaryTag);
      break;
    }
    default:
      if (!rest.empty()) {
        throw ConfigError("adversary '" + text.substr(0, colon) +
                          "' takes no parameters");
      }
  }
  return spec;
}

algorithms::SimEnv build_env(const Scenario& s) {
  algorithms::SimEnv env;
  env.machine_count = s.machines;
  env.jobs = generate_jobs(s.jobs, s.seed);
  env.algorithm = s.algorithm;
  env.mode = s.mode.value_or(algorithms::default_mode(s.algorithm));
  env.seed = s.seed;
  env.round_limit = s.round_limit;
  if (s.machines < 1) throw ConfigError("machine count must be >= 1");
  env.adversary = parse_adversary(s.adversary, s.f, s.machines, s.seed);
  algorithms::validate(env);
  return env;
}

std::string csv_header() {
  return "algo,m,n,L,alpha,f,adversary,seed,work,rounds,reliable,bound_pre,"
         "bound_nonpre,bound_rand";
}

std::string to_csv(const ResultRow& r) {
  std::string line = r.algo;
  for (const std::string& field :
       {std::to_string(r.m), std::to_string(r.n), std::to_string(r.L),
        std::to_string(r.alpha), std::to_string(r.f), r.adversary,
        std::to_string(r.seed), std::to_string(r.work), std::to_string(r.rounds),
        std::string(r.reliable ? "1" : "0"), format_double(r.bound_pre),
        format_double(r.bound_nonpre), format_double(r.bound_rand)}) {
    line += ',';
    line += field;
  }
  return line;
}

ResultRow parse_csv_row(const std::string& line) {
  const auto f = split(line, ',');
  if (f.size() != 14) {
    throw ConfigError("expected 14 CSV fields, got " + std::to_string(f.size()));
  }
  ResultRow r;
  r.algo = f[0];
  r.m = parse_number<int>(f[1], "m");
  r.n = parse_number<int>(f[2], "n");
  r.L = parse_number<std::int64_t>(f[3], "L");
  r.alpha = parse_number<int>(f[4], "alpha");
  r.f = parse_number<int>(f[5], "f");
  r.adversary = f[6];
  r.seed = parse_number<std::uint64_t>(f[7], "seed");
  r.work = parse_number<Work>(f[8], "work");
  r.rounds = parse_number<Round>(f[9], "rounds");
  if (f[10] != "0" && f[10] != "1") throw ConfigError("bad reliable flag");
  r.reliable = f[10] == "1";
  r.bound_pre = parse_double(f[11], "bound_pre");
  r.bound_nonpre = parse_double(f[12], "bound_nonpre");
  r.bound_rand = parse_double(f[13], "bound_rand");
  return r;
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) {
    throw ConfigError("CSV header does not match the result schema");
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty()) rows.push_back(parse_csv_row(line));
  }
  return rows;
}

std::string write_csv(std::span<const ResultRow> rows) {
  std::string out = csv_header() + '\n';
  for (const auto& row : rows) out += to_csv(row) + '\n';
  return out;
}

ScenarioRun run_scenario(const Scenario& scenario) {
  const algorithms::SimEnv env = build_env(scenario);
  ScenarioRun run;
  run.result = algorithms::simulate(env);
  ResultRow& r = run.row;
  r.algo = algorithms::to_string(env.algorithm);
  r.m = env.machine_count;
  r.n = env.jobs.n();
  r.L = env.jobs.total_length();
  r.alpha = env.jobs.max_length();
  r.f = env.adversary.budget;
  r.adversary = env.adversary.label();
  r.seed = env.seed;
  r.work = run.result.work;
  r.rounds = run.result.rounds;
  r.reliable = run.result.verdict.reliable;
  const auto params = oracle::params_for(env.machine_count, env.jobs, r.f);
  r.bound_pre = oracle::bound_eval(oracle::BoundKind::Preemptive, params);
  r.bound_nonpre = env.jobs.n() > 0
                       ? oracle::bound_eval(oracle::BoundKind::NonPreemptive, params)
                       : 0.0;
  r.bound_rand = oracle::bound_eval(oracle::BoundKind::Randomized, params);
  return run;
}

ResultRow run_once(const Scenario& scenario) { return run_scenario(scenario).row; }

std::string plan_log(const Scenario& scenario) {
  const algorithms::SimEnv env = build_env(scenario);
  auto engine = algorithms::make_engine(env);
  adversary::Adversary adversary(env.adversary, env.machine_count);
  std::string out;
  int logged = -1;
  auto record = [&] {
    for (const auto& process : engine.processes()) {
      if (!engine.status(process.id()).running()) continue;
      const auto* plan = process.current_plan();
      if (plan != nullptr && process.epochs_completed() != logged) {
        logged = process.epochs_completed();
        out += "# epoch " + std::to_string(logged + 1) + " round " +
               std::to_string(engine.round()) + '\n' + tapebb::dump(*plan);
      }
      return;
    }
  };
  record();
  while (!engine.finished()) {
    engine.advance_round(adversary);
    record();
  }
  return out;
}

std::vector<std::uint64_t> expand_seeds(std::uint64_t count, std::uint64_t base) {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t k = 0; k < count; ++k) seeds.push_back(base + k);
  return seeds;
}

SweepGrid parse_grid(const std::string& json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  static const char* const kKeys[] = {"algo",  "mode",       "machines",  "jobs",
                                      "adversary", "f",      "seeds",     "seed",
                                      "seed_count", "seed_base", "round_limit", "out"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  auto axis = [&doc]<class T>(const char* key, std::vector<T>& out) {
    if (!doc.contains(key)) return;
    const json& value = doc[key];
    out.clear();
    try {
      if (value.is_array()) {
        for (const auto& item : value) out.push_back(item.get<T>());
      } else {
        out.push_back(value.get<T>());
      }
    } catch (const json::exception&) {
      throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
  };

  SweepGrid grid;
  std::vector<std::string> algos;
  std::vector<std::string> jobs;
  axis("algo", algos);
  axis("machines", grid.machines);
  axis("jobs", jobs);
  axis("adversary", grid.adversaries);
  axis("f", grid.f);
  axis("seeds", grid.seeds);
  if (doc.contains("seed")) {
    std::vector<std::uint64_t> single;
    axis("seed", single);
    grid.seeds.insert(grid.seeds.end(), single.begin(), single.end());
  }
  try {
    if (doc.contains("seed_count")) {
      const auto count = doc["seed_count"].get<std::uint64_t>();
      const auto base = doc.value("seed_base", std::uint64_t{0});
      const auto extra = expand_seeds(count, base);
      grid.seeds.insert(grid.seeds.end(), extra.begin(), extra.end());
    } else if (doc.contains("seed_base")) {
      throw ConfigError("seed_base needs seed_count");
    }
    if (doc.contains("mode")) grid.mode = parse_mode(doc["mode"].get<std::string>());
    if (doc.contains("round_limit")) grid.round_limit = doc["round_limit"].get<Round>();
    if (doc.contains("out")) grid.out = doc["out"].get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config has a value of the wrong type: ") + e.what());
  }
  for (const auto& a : algos) grid.algorithms.push_back(algorithms::parse_algorithm(a));
  for (const auto& j : jobs) grid.jobs.push_back(parse_jobs_spec(j));
  return grid;
}

SweepGrid load_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_grid(buffer.str());
}

std::vector<Scenario> expand(const SweepGrid& grid) {
  auto require = [](bool present, const char* axis) {
    if (!present) throw ConfigError(std::string("grid axis '") + axis + "' is empty");
  };
  require(!grid.algorithms.empty(), "algo");
  require(!grid.machines.empty(), "machines");
  require(!grid.jobs.empty(), "jobs");
  require(!grid.adversaries.empty(), "adversary");
  require(!grid.f.empty(), "f");
  require(!grid.seeds.empty(), "seeds");

  std::vector<Scenario> cells;
  for (auto algorithm : grid.algorithms) {
    for (int m : grid.machines) {
      for (const auto& jobs : grid.jobs) {
        for (const auto& adversary : grid.adversaries) {
          for (int f : grid.f) {
            for (auto seed : grid.seeds) {
              Scenario s;
              s.algorithm = algorithm;
              s.mode = grid.mode;
              s.machines = m;
              s.jobs = jobs;
              s.adversary = adversary;
              s.f = f;
              s.seed = seed;
              s.round_limit = grid.round_limit;
              build_env(s);
              cells.push_back(std::move(s));
            }
          }
        }
      }
    }
  }
  return cells;
}

std::vector<ResultRow> sweep(const SweepGrid& grid) {
  std::vector<ResultRow> rows;
  for (const auto& cell : expand(grid)) rows.push_back(run_once(cell));
  return rows;
}

int exit_status(std::span<const ResultRow> rows) {
  const bool ok = std::all_of(rows.begin(), rows.end(),
                              [](const ResultRow& row) { return row.reliable; });
  return ok ? kExitOk : kExitUnreliable;
}

}  // namespace macsched::harness
