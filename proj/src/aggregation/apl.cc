// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/aggregation/apl.h"

#include <algorithm>
#include <chrono>

#include "absl/strings/str_cat.h"
#include "sentiflow/common/log.h"

namespace sentiflow::aggregation {

absl::Status AplConfig::Validate() const {
  if (window_ms <= 0) return absl::InvalidArgumentError("apl window_ms must be positive");
  if (period_s <= 0) return absl::InvalidArgumentError("apl period_s must be positive");
  if (settle_ms < 0) return absl::InvalidArgumentError("apl settle_ms must be >= 0");
  return absl::OkStatus();
}

size_t AplCycleReport::failures() const {
  return static_cast<size_t>(std::count_if(processed.begin(), processed.end(),
                                           [](const auto& p) { return !p.error.empty(); }));
}

nlohmann::json AplCycleReport::ToJson() const {
  nlohmann::json runs = nlohmann::json::array();
  for (const AplKeywordReport& p : processed) {
    nlohmann::json j = {{"keyword", p.keyword}, {"from", p.from}, {"to", p.to},
                        {"rows", p.rows}};
    if (!p.error.empty()) j["error"] = p.error;
    runs.push_back(std::move(j));
  }
  return {{"cycle_at", cycle_at},
          {"processed", std::move(runs)},
          {"not_due", not_due},
          {"disabled", disabled},
          {"failures", failures()}};
}

AplScheduler::AplScheduler(ResultsDb& db, AggregateFn aggregate, const Clock& clock,
                           AplConfig config)
    : db_(db), aggregate_(std::move(aggregate)), clock_(clock), config_(config) {}

AplScheduler::~AplScheduler() { Stop(); }

AplCycleReport AplScheduler::RunCycle() {
  std::lock_guard cycle_lock(cycle_mu_);
  AplCycleReport report;
  report.cycle_at = clock_.NowMs();
  const TimestampMs horizon = report.cycle_at - config_.settle_ms;

  for (const AplEntry& entry : db_.ListApl()) {
    if (!entry.enabled) {
      ++report.disabled;
      continue;
    }
    const TimestampMs from = entry.last_run_at.value_or(entry.added_at);
    const int64_t complete = horizon > from ? (horizon - from) / config_.window_ms : 0;
    if (complete == 0) {
      report.not_due.push_back(entry.keyword);
      continue;
    }
    AplKeywordReport run{entry.keyword, from, from + complete * config_.window_ms, 0, ""};
    Query q{entry.keyword, run.from, run.to, entry.lang, config_.window_ms,
            QueryMode::kAutomated};
    absl::StatusOr<AggregateResult> result = aggregate_(q);
    absl::Status status = result.status();
    if (status.ok()) {
      run.rows = result->windows.size();
      status = db_.RecordAplRun(entry.keyword, run.to, result->windows);
    }
    if (!status.ok()) {
      run.error = status.ToString();
      run.rows = 0;
      LogEvent(LogLevel::kWarn, "apl.keyword_failed",
               {{"keyword", entry.keyword}, {"error", run.error}});
    }
    report.processed.push_back(std::move(run));
  }
  {
    std::lock_guard lock(mu_);
    ++cycles_;
  }
  return report;
}

void AplScheduler::Start() {
  if (thread_.joinable()) return;
  thread_ = std::jthread([this](std::stop_token stop) {
    while (!stop.stop_requested()) {
      const AplCycleReport report = RunCycle();
      LogEvent(LogLevel::kInfo, "apl.cycle",
               {{"processed", report.processed.size()}, {"failures", report.failures()}});
      std::unique_lock lock(mu_);
      cv_.wait_for(lock, stop, std::chrono::seconds(config_.period_s), [] { return false; });
    }
  });
}

void AplScheduler::Stop() {
  if (!thread_.joinable()) return;
  thread_.request_stop();
  thread_.join();
}

int64_t AplScheduler::cycles() const {
  std::lock_guard lock(mu_);
  return cycles_;
}

std::vector<TrendingEntry> Trending(ResultsDb& db, TimestampMs now, size_t n) {
  std::vector<TrendingEntry> all = db.RecentActivity(now - kTrendingSpanMs);
  std::sort(all.begin(), all.end(), [](const TrendingEntry& a, const TrendingEntry& b) {
    if (a.recent.matches != b.recent.matches) return a.recent.matches > b.recent.matches;
    return a.keyword < b.keyword;
  });
  if (all.size() > n) all.resize(n);
  return all;
}

}  // namespace sentiflow::aggregation
