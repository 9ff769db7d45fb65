// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/aggregation/query_service.h"

#include "absl/strings/str_format.h"
#include "sentiflow/common/log.h"

namespace sentiflow::aggregation {

QueryService::QueryService(ResultsDb& db, AggregateFn aggregate, const Clock& clock,
                           QueryServiceConfig config)
    : db_(db),
      aggregate_(std::move(aggregate)),
      clock_(clock),
      config_(config),
      next_seq_(db.MaxQuerySequence() + 1) {
  for (int i = 0; i < config_.workers; ++i) {
    workers_.emplace_back([this](std::stop_token stop) { WorkerLoop(stop); });
  }
}

QueryService::~QueryService() { Shutdown(); }

absl::StatusOr<std::string> QueryService::Submit(const Query& query) {
  if (absl::Status s = query.Validate(); !s.ok()) return s;
  QueryRecord record;
  record.query = query;
  record.query.mode = QueryMode::kOnDemand;
  record.submitted_at = clock_.NowMs();
  {
    std::lock_guard lock(mu_);
    if (shutdown_) return absl::UnavailableError("query service is shut down");
    record.query_id = absl::StrFormat("q-%06d", next_seq_++);
    if (absl::Status s = db_.InsertQuery(record); !s.ok()) return s;
    if (!workers_.empty()) {
      queue_.emplace_back(record.query_id, record.query);
      cv_.notify_one();
      return record.query_id;
    }
    ++running_;
  }
  Execute(record.query_id, record.query);
  {
    std::lock_guard lock(mu_);
    --running_;
  }
  idle_cv_.notify_all();
  return record.query_id;
}

void QueryService::Execute(const std::string& id, const Query& query) {
  absl::Status status = db_.MarkQueryRunning(id);
  if (status.ok()) {
    absl::StatusOr<AggregateResult> result = aggregate_(query);
    status = result.ok() ? db_.CompleteQuery(id, *result, clock_.NowMs()) : result.status();
  }
  if (!status.ok()) {
    LogEvent(LogLevel::kWarn, "query.failed", {{"query_id", id}, {"error", status.ToString()}});
    db_.FailQuery(id, status.ToString(), clock_.NowMs()).IgnoreError();
  }
}

void QueryService::WorkerLoop(std::stop_token stop) {
  while (true) {
    std::pair<std::string, Query> job;
    {
      std::unique_lock lock(mu_);
      cv_.wait(lock, stop, [this] { return !queue_.empty() || shutdown_; });
      if (queue_.empty()) return;
      job = std::move(queue_.front());
      queue_.pop_front();
      ++running_;
    }
    Execute(job.first, job.second);
    {
      std::lock_guard lock(mu_);
      --running_;
    }
    idle_cv_.notify_all();
  }
}

absl::StatusOr<QueryRecord> QueryService::Status(std::string_view query_id) {
  return db_.GetQuery(query_id, /*with_results=*/true);
}

std::vector<QueryRecord> QueryService::SearchCompleted(std::string_view needle) {
  return db_.SearchCompletedQueries(needle);
}

void QueryService::WaitIdle() {
  std::unique_lock lock(mu_);
  idle_cv_.wait(lock, [this] { return queue_.empty() && running_ == 0; });
}

void QueryService::Shutdown() {
  {
    std::lock_guard lock(mu_);
    if (shutdown_) return;
    shutdown_ = true;
  }
  cv_.notify_all();
  workers_.clear();
}

size_t QueryService::queued() const {
  std::lock_guard lock(mu_);
  return queue_.size();
}

int QueryService::running() const {
  std::lock_guard lock(mu_);
  return running_;
}

}  // namespace sentiflow::aggregation
