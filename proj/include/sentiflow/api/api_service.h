// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "sentiflow/aggregation/query_service.h"
#include "sentiflow/aggregation/results_db.h"
#include "sentiflow/common/clock.h"

namespace sentiflow::api {

// Transport-neutral request. `path` is already percent-decoded.
struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> params;
  std::string body;
};

struct Response {
  int status = 200;
  // Empty for 204.
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;

  nlohmann::json json() const;
};

enum class ErrorCode { kBadRequest, kNotFound, kConflict, kInternal };

std::string_view ErrorCodeName(ErrorCode code);
// {"error": {"code": ..., "message": ...}}
Response ErrorResponse(int status, ErrorCode code, std::string_view message);

struct ApiConfig {
  std::string cors_origin = "*";
  size_t default_page_size = 100;
  size_t max_page_size = 10000;
  size_t default_trending = 10;
};

using StatsFn = std::function<nlohmann::json()>;

// Routes under /v1 over the APL store and the on-demand query service:
//   GET    /v1/health
//   GET    /v1/apl?offset=&limit=
//   POST   /v1/apl                         {keyword, lang}
//   GET    /v1/apl/search?q=
//   GET    /v1/apl/trending?n=
//   GET    /v1/apl/{kw}/evolution?from=&to=
//   GET    /v1/apl/{kw}/next?after=
//   DELETE /v1/apl/{kw}
//   POST   /v1/queries                     Query
//   GET    /v1/queries/search?q=
//   GET    /v1/queries/{id}/results
//   GET    /v1/stats
// Thread-safe; handlers keep no state of their own.
class ApiService {
 public:
  ApiService(aggregation::ResultsDb& db, aggregation::QueryService& queries,
             const Clock& clock, ApiConfig config = {}, StatsFn stats = nullptr);

  Response Handle(const Request& request) const;

 private:
  Response Route(const Request& request) const;

  Response ListApl(const Request& r) const;
  Response AddApl(const Request& r) const;
  Response SearchApl(const Request& r) const;
  Response Trending(const Request& r) const;
  Response Evolution(const Request& r, const std::string& kw) const;
  Response Next(const Request& r, const std::string& kw) const;
  Response DeleteApl(const std::string& kw) const;
  Response SubmitQuery(const Request& r) const;
  Response SearchQueries(const Request& r) const;
  Response QueryResults(const std::string& id) const;

  aggregation::ResultsDb& db_;
  aggregation::QueryService& queries_;
  const Clock& clock_;
  ApiConfig config_;
  StatsFn stats_;
};

}  // namespace sentiflow::api
