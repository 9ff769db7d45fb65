// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "sentiflow/aggregation/aggregate.h"
#include "sentiflow/aggregation/results_db.h"
#include "sentiflow/common/clock.h"

namespace sentiflow::aggregation {

inline constexpr int64_t kDefaultAplWindowMs = 5 * 60 * kMsPerSecond;
inline constexpr int64_t kTrendingSpanMs = 60 * 60 * kMsPerSecond;

struct AplConfig {
  int64_t window_ms = kDefaultAplWindowMs;
  int64_t period_s = 300;
  // Windows closing later than now - settle_ms wait for the next cycle, so
  // posts still in the pipeline are not missed.
  int64_t settle_ms = 0;

  absl::Status Validate() const;
};

struct AplKeywordReport {
  std::string keyword;
  TimestampMs from = 0;
  TimestampMs to = 0;
  size_t rows = 0;
  std::string error;  // empty on success
};

struct AplCycleReport {
  TimestampMs cycle_at = 0;
  std::vector<AplKeywordReport> processed;
  // Enabled entries with no complete window yet.
  std::vector<std::string> not_due;
  size_t disabled = 0;

  size_t failures() const;
  nlohmann::json ToJson() const;
};

// Periodic aggregation of every enabled APL keyword. Each entry covers the
// complete windows of [last_run_at, now), starting from added_at on its
// first run, so consecutive cycles tile time without gaps or overlap.
class AplScheduler {
 public:
  AplScheduler(ResultsDb& db, AggregateFn aggregate, const Clock& clock,
               AplConfig config = {});
  ~AplScheduler();

  AplScheduler(const AplScheduler&) = delete;
  AplScheduler& operator=(const AplScheduler&) = delete;

  AplCycleReport RunCycle();

  // Runs a cycle every period_s on a background thread.
  void Start();
  void Stop();
  bool running() const { return thread_.joinable(); }

  // Number of cycles run so far, including manual ones.
  int64_t cycles() const;

 private:
  ResultsDb& db_;
  AggregateFn aggregate_;
  const Clock& clock_;
  AplConfig config_;

  mutable std::mutex mu_;
  std::condition_variable_any cv_;
  int64_t cycles_ = 0;
  std::mutex cycle_mu_;
  std::jthread thread_;
};

// Top-n APL keywords by matches over the last hour of automated windows,
// highest first, ties by keyword. Keywords without activity rank last.
std::vector<TrendingEntry> Trending(ResultsDb& db, TimestampMs now, size_t n);

}  // namespace sentiflow::aggregation
