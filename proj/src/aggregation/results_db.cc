// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/aggregation/results_db.h"

#include <sqlite3.h>

#include <cstdlib>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"

namespace sentiflow::aggregation {
namespace {

constexpr char kSchema[] = R"sql(
CREATE TABLE IF NOT EXISTS apl (
  keyword TEXT PRIMARY KEY,
  lang TEXT NOT NULL,
  added_at INTEGER NOT NULL,
  enabled INTEGER NOT NULL,
  last_run_at INTEGER
);
CREATE TABLE IF NOT EXISTS automated_results (
  keyword TEXT NOT NULL,
  lang TEXT NOT NULL,
  window_start INTEGER NOT NULL,
  polarity_sum INTEGER NOT NULL,
  matches INTEGER NOT NULL,
  positives INTEGER NOT NULL,
  negatives INTEGER NOT NULL,
  neutral INTEGER NOT NULL,
  ap REAL,
  pos_ratio REAL NOT NULL,
  neg_ratio REAL NOT NULL,
  neutral_ratio REAL NOT NULL,
  PRIMARY KEY (keyword, window_start)
);
CREATE TABLE IF NOT EXISTS ondemand_results (
  query_id TEXT NOT NULL,
  keyword TEXT NOT NULL,
  lang TEXT NOT NULL,
  window_start INTEGER NOT NULL,
  polarity_sum INTEGER NOT NULL,
  matches INTEGER NOT NULL,
  positives INTEGER NOT NULL,
  negatives INTEGER NOT NULL,
  neutral INTEGER NOT NULL,
  ap REAL,
  pos_ratio REAL NOT NULL,
  neg_ratio REAL NOT NULL,
  neutral_ratio REAL NOT NULL,
  PRIMARY KEY (query_id, window_start)
);
CREATE TABLE IF NOT EXISTS queries (
  query_id TEXT PRIMARY KEY,
  seq INTEGER NOT NULL,
  keyword TEXT NOT NULL,
  lang TEXT NOT NULL,
  t_start INTEGER NOT NULL,
  t_end INTEGER NOT NULL,
  window_ms INTEGER NOT NULL,
  mode TEXT NOT NULL,
  status TEXT NOT NULL,
  submitted_at INTEGER NOT NULL,
  completed_at INTEGER,
  error TEXT NOT NULL DEFAULT '',
  skipped INTEGER NOT NULL DEFAULT 0,
  total_polarity_sum INTEGER NOT NULL DEFAULT 0,
  total_matches INTEGER NOT NULL DEFAULT 0,
  total_positives INTEGER NOT NULL DEFAULT 0,
  total_negatives INTEGER NOT NULL DEFAULT 0
);
)sql";

constexpr char kWindowColumns[] =
    "window_start, polarity_sum, matches, positives, negatives";

// Prepared statement with positional binding.
class Stmt {
 public:
  Stmt(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) {
      status_ = absl::InternalError(absl::StrCat("prepare: ", sqlite3_errmsg(db)));
    }
  }
  ~Stmt() { sqlite3_finalize(stmt_); }

  Stmt& Bind(int64_t v) {
    if (stmt_) sqlite3_bind_int64(stmt_, ++index_, v);
    return *this;
  }
  Stmt& Bind(int v) { return Bind(static_cast<int64_t>(v)); }
  Stmt& Bind(double v) {
    if (stmt_) sqlite3_bind_double(stmt_, ++index_, v);
    return *this;
  }
  Stmt& Bind(std::string_view v) {
    if (stmt_) {
      sqlite3_bind_text(stmt_, ++index_, v.data(), static_cast<int>(v.size()),
                        SQLITE_TRANSIENT);
    }
    return *this;
  }
  Stmt& Bind(const std::optional<TimestampMs>& v) {
    if (!v) {
      if (stmt_) sqlite3_bind_null(stmt_, ++index_);
      return *this;
    }
    return Bind(*v);
  }

  // True while rows remain.
  bool Step() {
    if (!status_.ok()) return false;
    const int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc != SQLITE_DONE) {
      status_ = absl::InternalError(absl::StrCat("step: ", sqlite3_errmsg(db_)));
    }
    return false;
  }

  absl::Status Run() {
    while (Step()) {
    }
    return status_;
  }

  int64_t Int(int col) const { return sqlite3_column_int64(stmt_, col); }
  bool IsNull(int col) const { return sqlite3_column_type(stmt_, col) == SQLITE_NULL; }
  std::string Text(int col) const {
    const auto* p = sqlite3_column_text(stmt_, col);
    return p ? std::string(reinterpret_cast<const char*>(p)) : std::string();
  }
  int columns() const { return sqlite3_column_count(stmt_); }
  std::string Name(int col) const { return sqlite3_column_name(stmt_, col); }
  int Type(int col) const { return sqlite3_column_type(stmt_, col); }
  double Real(int col) const { return sqlite3_column_double(stmt_, col); }

  const absl::Status& status() const { return status_; }

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
  int index_ = 0;
  absl::Status status_;
};

WindowAggregate ReadWindow(const Stmt& s, int first) {
  WindowAggregate w;
  w.window_start = s.Int(first);
  w.tuple.polarity_sum = s.Int(first + 1);
  w.tuple.matches = s.Int(first + 2);
  w.tuple.positives = s.Int(first + 3);
  w.tuple.negatives = s.Int(first + 4);
  return w;
}

Stmt& BindWindow(Stmt& s, const WindowAggregate& w) {
  s.Bind(w.window_start)
      .Bind(w.tuple.polarity_sum)
      .Bind(w.tuple.matches)
      .Bind(w.tuple.positives)
      .Bind(w.tuple.negatives)
      .Bind(w.neutral());
  if (auto ap = w.ap()) {
    s.Bind(*ap);
  } else {
    s.Bind(std::optional<TimestampMs>());
  }
  return s.Bind(w.pos_ratio()).Bind(w.neg_ratio()).Bind(w.neutral_ratio());
}

AplEntry ReadApl(const Stmt& s) {
  AplEntry e;
  e.keyword = s.Text(0);
  e.lang = s.Text(1);
  e.added_at = s.Int(2);
  e.enabled = s.Int(3) != 0;
  if (!s.IsNull(4)) e.last_run_at = s.Int(4);
  return e;
}

constexpr char kAplColumns[] = "keyword, lang, added_at, enabled, last_run_at";
constexpr char kQueryColumns[] =
    "query_id, keyword, lang, t_start, t_end, window_ms, mode, status, submitted_at, "
    "completed_at, error, skipped, total_polarity_sum, total_matches, "
    "total_positives, total_negatives";

QueryRecord ReadQuery(const Stmt& s) {
  QueryRecord r;
  r.query_id = s.Text(0);
  r.query.keyword = s.Text(1);
  r.query.lang = s.Text(2);
  r.query.t_start = s.Int(3);
  r.query.t_end = s.Int(4);
  r.query.window_ms = s.Int(5);
  r.query.mode = ParseQueryMode(s.Text(6)).value_or(QueryMode::kOnDemand);
  r.status = ParseQueryStatus(s.Text(7)).value_or(QueryStatus::kFailed);
  r.submitted_at = s.Int(8);
  if (!s.IsNull(9)) r.completed_at = s.Int(9);
  r.error = s.Text(10);
  r.result.skipped = s.Int(11);
  r.result.totals = {s.Int(12), s.Int(13), s.Int(14), s.Int(15)};
  return r;
}

int64_t QuerySequence(std::string_view id) {
  const size_t dash = id.rfind('-');
  if (dash == std::string_view::npos) return 0;
  return std::strtoll(std::string(id.substr(dash + 1)).c_str(), nullptr, 10);
}

std::string CsvField(const std::string& v) {
  if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

nlohmann::json AplEntryToJson(const AplEntry& e) {
  nlohmann::json j = {{"keyword", e.keyword},
                      {"lang", e.lang},
                      {"added_at", e.added_at},
                      {"enabled", e.enabled}};
  j["last_run_at"] = e.last_run_at ? nlohmann::json(*e.last_run_at) : nlohmann::json();
  return j;
}

std::string NormalizeKeyword(std::string_view keyword) {
  std::string out;
  bool pending_space = false;
  for (char c : keyword) {
    if (absl::ascii_isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(absl::ascii_tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string_view QueryStatusName(QueryStatus s) {
  switch (s) {
    case QueryStatus::kPending: return "pending";
    case QueryStatus::kRunning: return "running";
    case QueryStatus::kDone: return "done";
    case QueryStatus::kFailed: return "failed";
  }
  return "failed";
}

absl::StatusOr<QueryStatus> ParseQueryStatus(std::string_view name) {
  for (QueryStatus s : {QueryStatus::kPending, QueryStatus::kRunning, QueryStatus::kDone,
                        QueryStatus::kFailed}) {
    if (QueryStatusName(s) == name) return s;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown status '", std::string(name), "'"));
}

nlohmann::json QueryRecordToJson(const QueryRecord& r, bool with_results) {
  nlohmann::json j = {{"query_id", r.query_id},
                      {"query", QueryToJson(r.query)},
                      {"status", QueryStatusName(r.status)},
                      {"submitted_at", r.submitted_at}};
  j["completed_at"] = r.completed_at ? nlohmann::json(*r.completed_at) : nlohmann::json();
  if (!r.error.empty()) j["error"] = r.error;
  if (r.status == QueryStatus::kDone) {
    nlohmann::json result = ResultToJson(r.result);
    if (!with_results) result.erase("windows");
    j["result"] = std::move(result);
  }
  return j;
}

nlohmann::json TrendingToJson(const TrendingEntry& t) {
  nlohmann::json j = WindowToJson({0, t.recent});
  j.erase("window_start");
  j["keyword"] = t.keyword;
  j["lang"] = t.lang;
  return j;
}

absl::StatusOr<std::unique_ptr<ResultsDb>> ResultsDb::Open(const std::string& path) {
  sqlite3* db = nullptr;
  const int rc = sqlite3_open_v2(path.c_str(), &db,
                                 SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE |
                                     SQLITE_OPEN_NOMUTEX,
                                 nullptr);
  if (rc != SQLITE_OK) {
    std::string msg = db ? sqlite3_errmsg(db) : "out of memory";
    sqlite3_close(db);
    return absl::UnavailableError(absl::StrCat("open ", path, ": ", msg));
  }
  std::unique_ptr<ResultsDb> out(new ResultsDb(db));
  if (absl::Status s = out->Exec("PRAGMA journal_mode=WAL; PRAGMA synchronous=NORMAL;");
      !s.ok()) {
    return s;
  }
  if (absl::Status s = out->Exec(kSchema); !s.ok()) return s;
  return out;
}

ResultsDb::~ResultsDb() { sqlite3_close(db_); }

absl::Status ResultsDb::Exec(const char* sql) {
  char* err = nullptr;
  if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    absl::Status s = absl::InternalError(absl::StrCat("sqlite: ", err ? err : "?"));
    sqlite3_free(err);
    return s;
  }
  return absl::OkStatus();
}

absl::Status ResultsDb::AddApl(const AplEntry& entry) {
  std::lock_guard lock(mu_);
  Stmt s(db_,
         "INSERT OR IGNORE INTO apl (keyword, lang, added_at, enabled, last_run_at) "
         "VALUES (?, ?, ?, ?, ?)");
  s.Bind(entry.keyword).Bind(entry.lang).Bind(entry.added_at).Bind(entry.enabled ? 1 : 0)
      .Bind(entry.last_run_at);
  if (absl::Status st = s.Run(); !st.ok()) return st;
  if (sqlite3_changes(db_) == 0) {
    return absl::AlreadyExistsError(absl::StrCat("keyword '", entry.keyword, "' is in the APL"));
  }
  return absl::OkStatus();
}

absl::Status ResultsDb::DeleteApl(std::string_view keyword) {
  std::lock_guard lock(mu_);
  if (absl::Status s = Exec("BEGIN"); !s.ok()) return s;
  Stmt del(db_, "DELETE FROM apl WHERE keyword = ?");
  del.Bind(keyword);
  absl::Status st = del.Run();
  const bool existed = st.ok() && sqlite3_changes(db_) > 0;
  if (existed) {
    Stmt rows(db_, "DELETE FROM automated_results WHERE keyword = ?");
    rows.Bind(keyword);
    st = rows.Run();
  }
  if (!st.ok() || !existed) {
    Exec("ROLLBACK").IgnoreError();
    if (!st.ok()) return st;
    return absl::NotFoundError(absl::StrCat("keyword '", std::string(keyword), "' not in the APL"));
  }
  return Exec("COMMIT");
}

absl::StatusOr<AplEntry> ResultsDb::GetApl(std::string_view keyword) {
  std::lock_guard lock(mu_);
  Stmt s(db_, absl::StrCat("SELECT ", kAplColumns, " FROM apl WHERE keyword = ?").c_str());
  s.Bind(keyword);
  if (s.Step()) return ReadApl(s);
  if (!s.status().ok()) return s.status();
  return absl::NotFoundError(absl::StrCat("keyword '", std::string(keyword), "' not in the APL"));
}

std::vector<AplEntry> ResultsDb::ListApl(size_t offset, size_t limit) {
  std::lock_guard lock(mu_);
  Stmt s(db_, absl::StrCat("SELECT ", kAplColumns,
                           " FROM apl ORDER BY keyword LIMIT ? OFFSET ?").c_str());
  s.Bind(static_cast<int64_t>(std::min<size_t>(limit, INT64_MAX)))
      .Bind(static_cast<int64_t>(std::min<size_t>(offset, INT64_MAX)));
  std::vector<AplEntry> out;
  while (s.Step()) out.push_back(ReadApl(s));
  return out;
}

size_t ResultsDb::AplCount() {
  std::lock_guard lock(mu_);
  Stmt s(db_, "SELECT COUNT(*) FROM apl");
  return s.Step() ? static_cast<size_t>(s.Int(0)) : 0;
}

std::vector<AplEntry> ResultsDb::SearchApl(std::string_view needle) {
  std::lock_guard lock(mu_);
  Stmt s(db_, absl::StrCat("SELECT ", kAplColumns,
                           " FROM apl WHERE instr(keyword, ?) > 0 ORDER BY keyword")
                  .c_str());
  s.Bind(absl::AsciiStrToLower(std::string(needle)));
  std::vector<AplEntry> out;
  while (s.Step()) out.push_back(ReadApl(s));
  return out;
}

absl::Status ResultsDb::SetAplEnabled(std::string_view keyword, bool enabled) {
  std::lock_guard lock(mu_);
  Stmt s(db_, "UPDATE apl SET enabled = ? WHERE keyword = ?");
  s.Bind(enabled ? 1 : 0).Bind(keyword);
  if (absl::Status st = s.Run(); !st.ok()) return st;
  if (sqlite3_changes(db_) == 0) {
    return absl::NotFoundError(absl::StrCat("keyword '", std::string(keyword), "' not in the APL"));
  }
  return absl::OkStatus();
}

absl::Status ResultsDb::RecordAplRun(std::string_view keyword, TimestampMs last_run_at,
                                     const std::vector<WindowAggregate>& rows) {
  std::lock_guard lock(mu_);
  if (absl::Status s = Exec("BEGIN"); !s.ok()) return s;
  auto fail = [&](absl::Status s) {
    Exec("ROLLBACK").IgnoreError();
    return s;
  };
  Stmt update(db_, "UPDATE apl SET last_run_at = ? WHERE keyword = ?");
  update.Bind(last_run_at).Bind(keyword);
  if (absl::Status s = update.Run(); !s.ok()) return fail(s);
  if (sqlite3_changes(db_) == 0) {
    return fail(absl::NotFoundError(
        absl::StrCat("keyword '", std::string(keyword), "' not in the APL")));
  }
  for (const WindowAggregate& w : rows) {
    Stmt ins(db_,
             "INSERT OR REPLACE INTO automated_results (keyword, lang, window_start, "
             "polarity_sum, matches, positives, negatives, neutral, ap, pos_ratio, "
             "neg_ratio, neutral_ratio) "
             "SELECT keyword, lang, ?, ?, ?, ?, ?, ?, ?, ?, ?, ? FROM apl WHERE keyword = ?");
    BindWindow(ins, w).Bind(keyword);
    if (absl::Status s = ins.Run(); !s.ok()) return fail(s);
  }
  return Exec("COMMIT");
}

std::vector<WindowAggregate> ResultsDb::Evolution(std::string_view keyword,
                                                  TimestampMs from, TimestampMs to) {
  std::lock_guard lock(mu_);
  Stmt s(db_, absl::StrCat("SELECT ", kWindowColumns,
                           " FROM automated_results WHERE keyword = ? AND window_start >= ? "
                           "AND window_start < ? ORDER BY window_start")
                  .c_str());
  s.Bind(keyword).Bind(from).Bind(to);
  std::vector<WindowAggregate> out;
  while (s.Step()) out.push_back(ReadWindow(s, 0));
  return out;
}

std::optional<WindowAggregate> ResultsDb::NextMeasure(std::string_view keyword,
                                                      TimestampMs after) {
  std::lock_guard lock(mu_);
  Stmt s(db_, absl::StrCat("SELECT ", kWindowColumns,
                           " FROM automated_results WHERE keyword = ? AND window_start > ? "
                           "ORDER BY window_start LIMIT 1")
                  .c_str());
  s.Bind(keyword).Bind(after);
  if (s.Step()) return ReadWindow(s, 0);
  return std::nullopt;
}

std::vector<TrendingEntry> ResultsDb::RecentActivity(TimestampMs since) {
  std::lock_guard lock(mu_);
  Stmt s(db_,
         "SELECT a.keyword, a.lang, COALESCE(SUM(r.polarity_sum), 0), "
         "COALESCE(SUM(r.matches), 0), COALESCE(SUM(r.positives), 0), "
         "COALESCE(SUM(r.negatives), 0) FROM apl a LEFT JOIN automated_results r "
         "ON r.keyword = a.keyword AND r.window_start >= ? "
         "GROUP BY a.keyword, a.lang ORDER BY a.keyword");
  s.Bind(since);
  std::vector<TrendingEntry> out;
  while (s.Step()) {
    out.push_back({s.Text(0), s.Text(1), {s.Int(2), s.Int(3), s.Int(4), s.Int(5)}});
  }
  return out;
}

absl::Status ResultsDb::InsertQuery(const QueryRecord& r) {
  std::lock_guard lock(mu_);
  Stmt s(db_,
         "INSERT INTO queries (query_id, seq, keyword, lang, t_start, t_end, window_ms, "
         "mode, status, submitted_at) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?)");
  s.Bind(r.query_id)
      .Bind(QuerySequence(r.query_id))
      .Bind(r.query.keyword)
      .Bind(r.query.lang)
      .Bind(r.query.t_start)
      .Bind(r.query.t_end)
      .Bind(r.query.window_ms)
      .Bind(QueryModeName(r.query.mode))
      .Bind(QueryStatusName(r.status))
      .Bind(r.submitted_at);
  return s.Run();
}

absl::Status ResultsDb::MarkQueryRunning(std::string_view query_id) {
  std::lock_guard lock(mu_);
  Stmt s(db_, "UPDATE queries SET status = 'running' WHERE query_id = ?");
  s.Bind(query_id);
  return s.Run();
}

absl::Status ResultsDb::CompleteQuery(std::string_view query_id,
                                      const AggregateResult& result,
                                      TimestampMs completed_at) {
  std::lock_guard lock(mu_);
  if (absl::Status s = Exec("BEGIN"); !s.ok()) return s;
  auto fail = [&](absl::Status s) {
    Exec("ROLLBACK").IgnoreError();
    return s;
  };
  for (const WindowAggregate& w : result.windows) {
    Stmt ins(db_,
             "INSERT OR REPLACE INTO ondemand_results (query_id, keyword, lang, "
             "window_start, polarity_sum, matches, positives, negatives, neutral, ap, "
             "pos_ratio, neg_ratio, neutral_ratio) "
             "SELECT query_id, keyword, lang, ?, ?, ?, ?, ?, ?, ?, ?, ?, ? FROM queries "
             "WHERE query_id = ?");
    BindWindow(ins, w).Bind(query_id);
    if (absl::Status s = ins.Run(); !s.ok()) return fail(s);
  }
  Stmt up(db_,
          "UPDATE queries SET status = 'done', completed_at = ?, skipped = ?, "
          "total_polarity_sum = ?, total_matches = ?, total_positives = ?, "
          "total_negatives = ? WHERE query_id = ?");
  up.Bind(completed_at)
      .Bind(result.skipped)
      .Bind(result.totals.polarity_sum)
      .Bind(result.totals.matches)
      .Bind(result.totals.positives)
      .Bind(result.totals.negatives)
      .Bind(query_id);
  if (absl::Status s = up.Run(); !s.ok()) return fail(s);
  return Exec("COMMIT");
}

absl::Status ResultsDb::FailQuery(std::string_view query_id, std::string_view error,
                                  TimestampMs completed_at) {
  std::lock_guard lock(mu_);
  Stmt s(db_,
         "UPDATE queries SET status = 'failed', error = ?, completed_at = ? "
         "WHERE query_id = ?");
  s.Bind(error).Bind(completed_at).Bind(query_id);
  return s.Run();
}

absl::StatusOr<QueryRecord> ResultsDb::GetQuery(std::string_view query_id,
                                                bool with_results) {
  std::lock_guard lock(mu_);
  QueryRecord r;
  {
    Stmt s(db_, absl::StrCat("SELECT ", kQueryColumns, " FROM queries WHERE query_id = ?")
                    .c_str());
    s.Bind(query_id);
    if (!s.Step()) {
      if (!s.status().ok()) return s.status();
      return absl::NotFoundError(absl::StrCat("no query '", std::string(query_id), "'"));
    }
    r = ReadQuery(s);
  }
  if (with_results && r.status == QueryStatus::kDone) {
    Stmt s(db_, absl::StrCat("SELECT ", kWindowColumns,
                             " FROM ondemand_results WHERE query_id = ? ORDER BY window_start")
                    .c_str());
    s.Bind(query_id);
    while (s.Step()) r.result.windows.push_back(ReadWindow(s, 0));
    if (!s.status().ok()) return s.status();
  }
  return r;
}

std::vector<QueryRecord> ResultsDb::SearchCompletedQueries(std::string_view needle) {
  std::lock_guard lock(mu_);
  Stmt s(db_, absl::StrCat("SELECT ", kQueryColumns,
                           " FROM queries WHERE status = 'done' AND "
                           "instr(lower(keyword), ?) > 0 ORDER BY seq DESC")
                  .c_str());
  s.Bind(absl::AsciiStrToLower(std::string(needle)));
  std::vector<QueryRecord> out;
  while (s.Step()) out.push_back(ReadQuery(s));
  return out;
}

int64_t ResultsDb::MaxQuerySequence() {
  std::lock_guard lock(mu_);
  Stmt s(db_, "SELECT COALESCE(MAX(seq), 0) FROM queries");
  return s.Step() ? s.Int(0) : 0;
}

absl::Status ResultsDb::ExportCsv(ResultsTable table, std::ostream& out) {
  std::lock_guard lock(mu_);
  const char* sql = table == ResultsTable::kAutomated
                        ? "SELECT * FROM automated_results ORDER BY keyword, window_start"
                        : "SELECT * FROM ondemand_results ORDER BY query_id, window_start";
  Stmt s(db_, sql);
  if (!s.status().ok()) return s.status();
  for (int c = 0; c < s.columns(); ++c) out << (c ? "," : "") << s.Name(c);
  out << '\n';
  while (s.Step()) {
    for (int c = 0; c < s.columns(); ++c) {
      if (c) out << ',';
      switch (s.Type(c)) {
        case SQLITE_NULL:
          break;
        case SQLITE_INTEGER:
          out << s.Int(c);
          break;
        case SQLITE_FLOAT:
          out << absl::StrCat(s.Real(c));
          break;
        default:
          out << CsvField(s.Text(c));
      }
    }
    out << '\n';
  }
  if (!s.status().ok()) return s.status();
  return out ? absl::OkStatus() : absl::UnavailableError("write failed");
}

}  // namespace sentiflow::aggregation
