// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/api/api_service.h"

#include <limits>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "sentiflow/aggregation/apl.h"
#include "sentiflow/common/log.h"

namespace sentiflow::api {
namespace {

using aggregation::AplEntry;
using aggregation::NormalizeKeyword;

Response Json(int status, const nlohmann::json& body) {
  Response r;
  r.status = status;
  r.body = body.dump();
  return r;
}

Response FromStatus(const absl::Status& s) {
  const std::string message(s.message());
  switch (s.code()) {
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
      return ErrorResponse(400, ErrorCode::kBadRequest, message);
    case absl::StatusCode::kNotFound:
      return ErrorResponse(404, ErrorCode::kNotFound, message);
    case absl::StatusCode::kAlreadyExists:
      return ErrorResponse(409, ErrorCode::kConflict, message);
    default:
      return ErrorResponse(500, ErrorCode::kInternal, message);
  }
}

// Integer query parameter; `fallback` when absent.
absl::StatusOr<int64_t> IntParam(const Request& r, const std::string& name,
                                 std::optional<int64_t> fallback) {
  auto it = r.params.find(name);
  if (it == r.params.end()) {
    if (fallback) return *fallback;
    return absl::InvalidArgumentError(absl::StrCat("missing parameter '", name, "'"));
  }
  int64_t v = 0;
  if (!absl::SimpleAtoi(it->second, &v)) {
    return absl::InvalidArgumentError(
        absl::StrCat("parameter '", name, "' is not an integer: '", it->second, "'"));
  }
  return v;
}

std::string StrParam(const Request& r, const std::string& name) {
  auto it = r.params.find(name);
  return it == r.params.end() ? std::string() : it->second;
}

absl::StatusOr<nlohmann::json> ParseBody(const Request& r) {
  nlohmann::json j = nlohmann::json::parse(r.body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return absl::InvalidArgumentError("body is not valid JSON");
  if (!j.is_object()) return absl::InvalidArgumentError("body must be a JSON object");
  return j;
}

nlohmann::json WindowsJson(const std::vector<aggregation::WindowAggregate>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& w : rows) out.push_back(aggregation::WindowToJson(w));
  return out;
}

}  // namespace

nlohmann::json Response::json() const {
  return nlohmann::json::parse(body, nullptr, /*allow_exceptions=*/false);
}

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadRequest: return "bad_request";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kInternal: return "internal";
  }
  return "internal";
}

Response ErrorResponse(int status, ErrorCode code, std::string_view message) {
  return Json(status, {{"error", {{"code", ErrorCodeName(code)}, {"message", message}}}});
}

ApiService::ApiService(aggregation::ResultsDb& db, aggregation::QueryService& queries,
                       const Clock& clock, ApiConfig config, StatsFn stats)
    : db_(db), queries_(queries), clock_(clock), config_(std::move(config)),
      stats_(std::move(stats)) {}

Response ApiService::Handle(const Request& request) const {
  Response r;
  if (request.method == "OPTIONS") {
    r.status = 204;
  } else {
    try {
      r = Route(request);
    } catch (const std::exception& e) {
      LogEvent(LogLevel::kError, "api.exception", {{"path", request.path}, {"what", e.what()}});
      r = ErrorResponse(500, ErrorCode::kInternal, e.what());
    }
  }
  if (!r.body.empty()) r.headers.emplace_back("Content-Type", "application/json");
  r.headers.emplace_back("Access-Control-Allow-Origin", config_.cors_origin);
  r.headers.emplace_back("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
  r.headers.emplace_back("Access-Control-Allow-Headers", "Content-Type");
  return r;
}

Response ApiService::Route(const Request& r) const {
  std::vector<std::string> seg = absl::StrSplit(r.path, '/', absl::SkipEmpty());
  const std::string& m = r.method;
  auto not_found = [&] {
    return ErrorResponse(404, ErrorCode::kNotFound, absl::StrCat("no route for ", m, " ", r.path));
  };
  if (seg.empty() || seg[0] != "v1") return not_found();
  seg.erase(seg.begin());
  const size_t n = seg.size();

  if (n == 1 && seg[0] == "health" && m == "GET") {
    return Json(200, {{"status", "ok"}, {"time", clock_.NowMs()}});
  }
  if (n == 1 && seg[0] == "stats" && m == "GET") {
    return Json(200, stats_ ? stats_() : nlohmann::json::object());
  }
  if (n >= 1 && seg[0] == "apl") {
    if (n == 1 && m == "GET") return ListApl(r);
    if (n == 1 && m == "POST") return AddApl(r);
    if (n == 2 && seg[1] == "search" && m == "GET") return SearchApl(r);
    if (n == 2 && seg[1] == "trending" && m == "GET") return Trending(r);
    if (n == 2 && m == "DELETE") return DeleteApl(seg[1]);
    if (n == 3 && seg[2] == "evolution" && m == "GET") return Evolution(r, seg[1]);
    if (n == 3 && seg[2] == "next" && m == "GET") return Next(r, seg[1]);
  }
  if (n >= 1 && seg[0] == "queries") {
    if (n == 1 && m == "POST") return SubmitQuery(r);
    if (n == 2 && seg[1] == "search" && m == "GET") return SearchQueries(r);
    if (n == 3 && seg[2] == "results" && m == "GET") return QueryResults(seg[1]);
  }
  return not_found();
}

Response ApiService::ListApl(const Request& r) const {
  auto offset = IntParam(r, "offset", 0);
  auto limit = IntParam(r, "limit", static_cast<int64_t>(config_.default_page_size));
  if (!offset.ok()) return FromStatus(offset.status());
  if (!limit.ok()) return FromStatus(limit.status());
  if (*offset < 0 || *limit < 0 || static_cast<size_t>(*limit) > config_.max_page_size) {
    return ErrorResponse(400, ErrorCode::kBadRequest,
                         absl::StrCat("offset must be >= 0 and limit in [0, ",
                                      config_.max_page_size, "]"));
  }
  nlohmann::json out = nlohmann::json::array();
  for (const AplEntry& e :
       db_.ListApl(static_cast<size_t>(*offset), static_cast<size_t>(*limit))) {
    out.push_back(aggregation::AplEntryToJson(e));
  }
  return Json(200, out);
}

Response ApiService::AddApl(const Request& r) const {
  auto body = ParseBody(r);
  if (!body.ok()) return FromStatus(body.status());
  const auto kw = body->find("keyword");
  if (kw == body->end() || !kw->is_string()) {
    return ErrorResponse(400, ErrorCode::kBadRequest, "keyword must be a string");
  }
  AplEntry entry;
  entry.keyword = NormalizeKeyword(kw->get<std::string>());
  if (!aggregation::Query{entry.keyword, 0, 1, "", 1}.Validate().ok()) {
    return ErrorResponse(400, ErrorCode::kBadRequest, "keyword must contain at least one word");
  }
  if (auto lang = body->find("lang"); lang != body->end()) {
    if (!lang->is_string() || lang->get<std::string>().empty()) {
      return ErrorResponse(400, ErrorCode::kBadRequest, "lang must be a non-empty string");
    }
    entry.lang = lang->get<std::string>();
  }
  entry.added_at = clock_.NowMs();
  if (absl::Status s = db_.AddApl(entry); !s.ok()) return FromStatus(s);
  return Json(201, aggregation::AplEntryToJson(entry));
}

Response ApiService::SearchApl(const Request& r) const {
  nlohmann::json out = nlohmann::json::array();
  for (const AplEntry& e : db_.SearchApl(StrParam(r, "q"))) {
    out.push_back(aggregation::AplEntryToJson(e));
  }
  return Json(200, out);
}

Response ApiService::Trending(const Request& r) const {
  auto n = IntParam(r, "n", static_cast<int64_t>(config_.default_trending));
  if (!n.ok()) return FromStatus(n.status());
  if (*n <= 0) return ErrorResponse(400, ErrorCode::kBadRequest, "n must be positive");
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : aggregation::Trending(db_, clock_.NowMs(), static_cast<size_t>(*n))) {
    out.push_back(aggregation::TrendingToJson(t));
  }
  return Json(200, out);
}

Response ApiService::Evolution(const Request& r, const std::string& raw_kw) const {
  const std::string kw = NormalizeKeyword(raw_kw);
  auto from = IntParam(r, "from", std::numeric_limits<int64_t>::min());
  auto to = IntParam(r, "to", std::numeric_limits<int64_t>::max());
  if (!from.ok()) return FromStatus(from.status());
  if (!to.ok()) return FromStatus(to.status());
  if (*from >= *to) return ErrorResponse(400, ErrorCode::kBadRequest, "from must be before to");
  if (auto e = db_.GetApl(kw); !e.ok()) return FromStatus(e.status());
  return Json(200, WindowsJson(db_.Evolution(kw, *from, *to)));
}

Response ApiService::Next(const Request& r, const std::string& raw_kw) const {
  const std::string kw = NormalizeKeyword(raw_kw);
  auto after = IntParam(r, "after", std::nullopt);
  if (!after.ok()) return FromStatus(after.status());
  if (auto e = db_.GetApl(kw); !e.ok()) return FromStatus(e.status());
  auto next = db_.NextMeasure(kw, *after);
  if (!next) {
    Response empty;
    empty.status = 204;
    return empty;
  }
  return Json(200, aggregation::WindowToJson(*next));
}

Response ApiService::DeleteApl(const std::string& raw_kw) const {
  const std::string kw = NormalizeKeyword(raw_kw);
  if (absl::Status s = db_.DeleteApl(kw); !s.ok()) return FromStatus(s);
  return Json(200, {{"deleted", kw}});
}

Response ApiService::SubmitQuery(const Request& r) const {
  auto body = ParseBody(r);
  if (!body.ok()) return FromStatus(body.status());
  auto query = aggregation::QueryFromJson(*body);
  if (!query.ok()) return FromStatus(query.status());
  auto id = queries_.Submit(*query);
  if (!id.ok()) return FromStatus(id.status());
  return Json(202, {{"query_id", *id}});
}

Response ApiService::SearchQueries(const Request& r) const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : queries_.SearchCompleted(StrParam(r, "q"))) {
    out.push_back(aggregation::QueryRecordToJson(q, /*with_results=*/false));
  }
  return Json(200, out);
}

Response ApiService::QueryResults(const std::string& id) const {
  auto record = queries_.Status(id);
  if (!record.ok()) return FromStatus(record.status());
  return Json(200, aggregation::QueryRecordToJson(*record, /*with_results=*/true));
}

}  // namespace sentiflow::api
