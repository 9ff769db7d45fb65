// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <condition_variable>
#include <deque>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "absl/status/statusor.h"
#include "sentiflow/aggregation/aggregate.h"
#include "sentiflow/aggregation/results_db.h"
#include "sentiflow/common/clock.h"

namespace sentiflow::aggregation {

struct QueryServiceConfig {
  // 0 runs each query on the submitting thread before Submit returns.
  int workers = 2;
};

// On-demand query execution. Submitted queries are recorded as pending,
// picked up by a fixed worker pool and persisted to the on-demand table.
class QueryService {
 public:
  QueryService(ResultsDb& db, AggregateFn aggregate, const Clock& clock,
               QueryServiceConfig config = {});
  // Finishes queued queries before returning.
  ~QueryService();

  QueryService(const QueryService&) = delete;
  QueryService& operator=(const QueryService&) = delete;

  // Validates and enqueues; returns a fresh id of the form "q-000123".
  absl::StatusOr<std::string> Submit(const Query& query);
  // NotFound for unknown ids. Windows are included once done.
  absl::StatusOr<QueryRecord> Status(std::string_view query_id);
  std::vector<QueryRecord> SearchCompleted(std::string_view needle);

  // Blocks until every submitted query has finished.
  void WaitIdle();
  void Shutdown();

  size_t queued() const;
  int running() const;

 private:
  void Execute(const std::string& id, const Query& query);
  void WorkerLoop(std::stop_token stop);

  ResultsDb& db_;
  AggregateFn aggregate_;
  const Clock& clock_;
  QueryServiceConfig config_;

  mutable std::mutex mu_;
  std::condition_variable_any cv_;
  std::condition_variable_any idle_cv_;
  std::deque<std::pair<std::string, Query>> queue_;
  int64_t next_seq_;
  int running_ = 0;
  bool shutdown_ = false;
  std::vector<std::jthread> workers_;
};

}  // namespace sentiflow::aggregation
