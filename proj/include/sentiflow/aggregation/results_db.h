// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sentiflow/aggregation/query.h"

struct sqlite3;

namespace sentiflow::aggregation {

struct AplEntry {
  std::string keyword;
  std::string lang = "en";
  TimestampMs added_at = 0;
  bool enabled = true;
  std::optional<TimestampMs> last_run_at;

  bool operator==(const AplEntry&) const = default;
};

nlohmann::json AplEntryToJson(const AplEntry& e);

// Lowercase, trimmed, inner whitespace collapsed to one space.
std::string NormalizeKeyword(std::string_view keyword);

enum class QueryStatus { kPending, kRunning, kDone, kFailed };

std::string_view QueryStatusName(QueryStatus s);
absl::StatusOr<QueryStatus> ParseQueryStatus(std::string_view name);

struct QueryRecord {
  std::string query_id;
  Query query;
  QueryStatus status = QueryStatus::kPending;
  TimestampMs submitted_at = 0;
  std::optional<TimestampMs> completed_at;
  std::string error;
  // Filled only when done.
  AggregateResult result;
};

// Summary fields only unless with_results.
nlohmann::json QueryRecordToJson(const QueryRecord& r, bool with_results);

// APL keyword activity over a recent span.
struct TrendingEntry {
  std::string keyword;
  std::string lang;
  Tuple recent;

  bool operator==(const TrendingEntry&) const = default;
};

nlohmann::json TrendingToJson(const TrendingEntry& t);

enum class ResultsTable { kAutomated, kOnDemand };

// Embedded SQLite store for the APL, automated and on-demand results, and
// query records. Thread-safe; every call runs under one connection lock.
class ResultsDb {
 public:
  // ":memory:" gives a private in-memory database.
  static absl::StatusOr<std::unique_ptr<ResultsDb>> Open(const std::string& path);
  ~ResultsDb();

  ResultsDb(const ResultsDb&) = delete;
  ResultsDb& operator=(const ResultsDb&) = delete;

  // AlreadyExists when the keyword is present.
  absl::Status AddApl(const AplEntry& entry);
  // Also removes the keyword's automated results. NotFound when absent.
  absl::Status DeleteApl(std::string_view keyword);
  absl::StatusOr<AplEntry> GetApl(std::string_view keyword);
  // Ordered by keyword.
  std::vector<AplEntry> ListApl(size_t offset = 0, size_t limit = SIZE_MAX);
  size_t AplCount();
  // Case-insensitive substring filter, ordered by keyword.
  std::vector<AplEntry> SearchApl(std::string_view needle);
  absl::Status SetAplEnabled(std::string_view keyword, bool enabled);

  // Appends automated rows and moves last_run_at in one transaction.
  absl::Status RecordAplRun(std::string_view keyword, TimestampMs last_run_at,
                            const std::vector<WindowAggregate>& rows);
  // Automated rows with window_start in [from, to).
  std::vector<WindowAggregate> Evolution(std::string_view keyword, TimestampMs from,
                                         TimestampMs to);
  // First automated row with window_start > after.
  std::optional<WindowAggregate> NextMeasure(std::string_view keyword, TimestampMs after);
  // Every APL entry with its automated totals over windows starting at or
  // after `since`.
  std::vector<TrendingEntry> RecentActivity(TimestampMs since);

  absl::Status InsertQuery(const QueryRecord& record);
  absl::Status MarkQueryRunning(std::string_view query_id);
  absl::Status CompleteQuery(std::string_view query_id, const AggregateResult& result,
                             TimestampMs completed_at);
  absl::Status FailQuery(std::string_view query_id, std::string_view error,
                         TimestampMs completed_at);
  absl::StatusOr<QueryRecord> GetQuery(std::string_view query_id, bool with_results);
  // Done queries whose keyword contains the needle (case-insensitive),
  // newest first.
  std::vector<QueryRecord> SearchCompletedQueries(std::string_view needle);
  // Highest numeric suffix among stored query ids, 0 if none.
  int64_t MaxQuerySequence();

  // Comma-separated dump of a results table with a header row.
  absl::Status ExportCsv(ResultsTable table, std::ostream& out);

 private:
  explicit ResultsDb(sqlite3* db) : db_(db) {}
  absl::Status Exec(const char* sql);

  std::mutex mu_;
  sqlite3* db_;
};

}  // namespace sentiflow::aggregation
