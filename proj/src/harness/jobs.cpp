// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include "macsched/harness/jobs.hpp"

#include <charconv>
#include <random>

#include "macsched/core/errors.hpp"

namespace macsched::harness {

namespace {

struct KindName {
  JobsSpec::Kind kind;
  const char* name;
  std::size_t arity;  // 0 = any
};

constexpr KindName kKinds[] = {
    {JobsSpec::Kind::Unit, "unit", 1},
    {JobsSpec::Kind::Equal, "equal", 2},
    {JobsSpec::Kind::OneLong, "one_long", 2},
    {JobsSpec::Kind::Uniform, "uniform", 3},
    {JobsSpec::Kind::Lengths, "lengths", 0},
};

const KindName& lookup(JobsSpec::Kind kind) {
  for (const auto& entry : kKinds) {
    if (entry.kind == kind) return entry;
  }
  return kKinds[0];
}

}  // namespace

std::string JobsSpec::text() const {
  std::string out = lookup(kind).name;
  for (std::size_t k = 0; k < params.size(); ++k) {
    out += k == 0 ? ':' : ',';
    out += std::to_string(params[k]);
  }
  return out;
}

JobsSpec parse_jobs_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const KindName* found = nullptr;
  for (const auto& entry : kKinds) {
    if (name == entry.name) found = &entry;
  }
  if (found == nullptr) throw ConfigError("unknown jobs kind '" + name + "'");

  JobsSpec spec;
  spec.kind = found->kind;
  if (colon != std::string::npos) {
    const char* p = text.data() + colon + 1;
    const char* end = text.data() + text.size();
    while (p < end) {
      int value = 0;
      auto [next, ec] = std::from_chars(p, end, value);
      if (ec != std::errc() || (next != end && *next != ',')) {
        throw ConfigError("bad jobs parameters in '" + text + "'");
      }
      spec.params.push_back(value);
      p = next == end ? end : next + 1;
    }
  }
  if (found->arity != 0 && spec.params.size() != found->arity) {
    throw ConfigError("'" + name + "' takes " + std::to_string(found->arity) +
                      " parameter(s), got '" + text + "'");
  }
  if (spec.params.empty()) throw ConfigError("'" + text + "' has no jobs");
  return spec;
}

JobSet generate_jobs(const JobsSpec& spec, std::uint64_t seed) {
  const auto& p = spec.params;
  std::vector<int> lengths;
  auto need = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  switch (spec.kind) {
    case JobsSpec::Kind::Unit:
      need(p.at(0) >= 1, "unit: n must be >= 1");
      lengths.assign(static_cast<std::size_t>(p[0]), 1);
      break;
    case JobsSpec::Kind::Equal:
      need(p.at(0) >= 1, "equal: n must be >= 1");
      need(p.at(1) >= 1, "equal: length must be >= 1");
      lengths.assign(static_cast<std::size_t>(p[0]), p[1]);
      break;
    case JobsSpec::Kind::OneLong:
      need(p.at(0) >= 1, "one_long: n must be >= 1");
      need(p.at(1) >= 1, "one_long: alpha must be >= 1");
      lengths.assign(static_cast<std::size_t>(p[0] - 1), 1);
      lengths.push_back(p[1]);
      break;
    case JobsSpec::Kind::Uniform: {
      need(p.at(0) >= 1, "uniform: n must be >= 1");
      need(p.at(1) >= 1, "uniform: lo must be >= 1");
      need(p.at(1) <= p.at(2), "uniform: lo must not exceed hi");
      std::mt19937_64 gen(seed);
      std::uniform_int_distribution<int> draw(p[1], p[2]);
      for (int k = 0; k < p[0]; ++k) lengths.push_back(draw(gen));
      break;
    }
    case JobsSpec::Kind::Lengths:
      lengths = p;
      break;
  }
  return JobSet::from_lengths(lengths);
}

}  // namespace macsched::harness
