// Copyright 2026 The macsched Authors
// SPDX-License-Identifier: Apache-2.0

#include "macsched/core/types.hpp"

#include <algorithm>

#include "macsched/core/errors.hpp"

namespace macsched {

std::string to_string(Mode mode) {
  return mode == Mode::Preemptive ? "preemptive" : "non-preemptive";
}

Mode parse_mode(const std::string& text) {
  if (text == "preemptive") return Mode::Preemptive;
  if (text == "non-preemptive" || text == "nonpreemptive") {
    return Mode::NonPreemptive;
  }
  throw ConfigError("unknown mode '" + text + "'");
}

JobSet::JobSet(std::vector<JobSpec> jobs) : jobs_(std::move(jobs)) {
  std::sort(jobs_.begin(), jobs_.end(),
            [](const JobSpec& a, const JobSpec& b) { return a.id < b.id; });
  for (std::size_t k = 0; k < jobs_.size(); ++k) {
    if (jobs_[k].id < 1) throw ConfigError("job ids must be positive");
    if (jobs_[k].length < 1) throw ConfigError("job lengths must be >= 1");
    if (k > 0 && jobs_[k].id == jobs_[k - 1].id) {
      throw ConfigError("duplicate job id " + std::to_string(jobs_[k].id));
    }
    total_ += jobs_[k].length;
    alpha_ = std::max(alpha_, jobs_[k].length);
  }
}

JobSet JobSet::from_lengths(std::span<const int> lengths) {
  std::vector<JobSpec> jobs;
  jobs.reserve(lengths.size());
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    jobs.push_back({static_cast<JobId>(k + 1), lengths[k]});
  }
  return JobSet(std::move(jobs));
}

const JobSpec* JobSet::find(JobId id) const {
  auto it = std::lower_bound(
      jobs_.begin(), jobs_.end(), id,
      [](const JobSpec& job, JobId key) { return job.id < key; });
  if (it == jobs_.end() || it->id != id) return nullptr;
  return &*it;
}

int JobSet::length_of(JobId id) const {
  const JobSpec* job = find(id);
  if (job == nullptr) throw std::out_of_range("unknown job " + std::to_string(id));
  return job->length;
}

TaskTable make_task_table(const JobSet& jobs) {
  TaskTable table;
  table.reserve(jobs.jobs().size());
  for (const auto& job : jobs.jobs()) table.push_back({job.id, job.length, 1});
  return table;
}

std::int64_t outstanding_tasks(const TaskTable& table) {
  std::int64_t total = 0;
  for (const auto& entry : table) total += entry.remaining();
  return total;
}

std::string render(const Payload& payload) {
  switch (payload.kind) {
    case PayloadKind::Elect:
      return "elect";
    case PayloadKind::AllDone:
      return "done";
    case PayloadKind::Confirm:
      break;
  }
  std::string out = "confirm:";
  for (std::size_t k = 0; k < payload.spans.size(); ++k) {
    const auto& span = payload.spans[k];
    if (k > 0) out += ';';
    out += std::to_string(span.job) + '[' + std::to_string(span.first) + '-' +
           std::to_string(span.last) + ']';
  }
  return out;
}

ChannelOutcome resolve_channel(std::span<const TransmissionIntent> intents) {
  if (intents.size() != 1) return {};
  return ChannelOutcome{Delivered{intents[0].sender, intents[0].payload}};
}

}  // namespace macsched
