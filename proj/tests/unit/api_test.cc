// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/api/api_service.h"

#include <gtest/gtest.h>

#include "httplib.h"
#include "sentiflow/aggregation/apl.h"
#include "sentiflow/api/http_server.h"
#include "support/api_state_machine.h"

namespace sentiflow::api {
namespace {

using nlohmann::json;

class ApiTest : public ::testing::Test {
 protected:
  ApiTest()
      : clock_(1'000'000),
        db_(std::move(*aggregation::ResultsDb::Open(":memory:"))),
        queries_(*db_, [this](const aggregation::Query& q) { return Fake(q); }, clock_, {0}),
        api_(*db_, queries_, clock_, {}, [] { return json{{"polled", 3}}; }) {}

  absl::StatusOr<aggregation::AggregateResult> Fake(const aggregation::Query& q) {
    aggregation::AggregateResult r;
    r.windows.push_back({q.t_start, {1, 4, 2, 1}});
    r.totals = r.windows[0].tuple;
    return r;
  }

  Response Get(const std::string& path, std::map<std::string, std::string> params = {}) {
    return api_.Handle({"GET", path, std::move(params), ""});
  }
  Response Post(const std::string& path, const json& body) {
    return api_.Handle({"POST", path, {}, body.dump()});
  }
  Response Delete(const std::string& path) { return api_.Handle({"DELETE", path, {}, ""}); }

  static void ExpectError(const Response& r, int status, const std::string& code) {
    EXPECT_EQ(r.status, status) << r.body;
    const json j = r.json();
    ASSERT_TRUE(j.contains("error")) << r.body;
    EXPECT_EQ(j["error"]["code"], code);
    EXPECT_TRUE(j["error"]["message"].is_string());
    EXPECT_EQ(j.size(), 1u);
  }

  ManualClock clock_;
  std::unique_ptr<aggregation::ResultsDb> db_;
  aggregation::QueryService queries_;
  ApiService api_;
};

TEST_F(ApiTest, HealthAndStats) {
  auto r = Get("/v1/health");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.json()["status"], "ok");
  EXPECT_EQ(Get("/v1/stats").json()["polled"], 3);
  ExpectError(Get("/v2/health"), 404, "not_found");
  ExpectError(Get("/v1/nothing"), 404, "not_found");
}

TEST_F(ApiTest, CorsHeadersAndPreflight) {
  auto r = api_.Handle({"OPTIONS", "/v1/apl", {}, ""});
  EXPECT_EQ(r.status, 204);
  EXPECT_TRUE(r.body.empty());
  bool origin = false;
  for (const auto& [k, v] : Get("/v1/apl").headers) origin |= k == "Access-Control-Allow-Origin";
  EXPECT_TRUE(origin);
}

TEST_F(ApiTest, AplListAddDelete) {
  EXPECT_EQ(Get("/v1/apl").json(), json::array());
  auto r = Post("/v1/apl", {{"keyword", "  Travel  BAN "}});
  EXPECT_EQ(r.status, 201);
  EXPECT_EQ(r.json()["keyword"], "travel ban");
  EXPECT_EQ(r.json()["added_at"], 1'000'000);
  EXPECT_EQ(r.json()["lang"], "en");
  EXPECT_EQ(Get("/v1/apl").json().size(), 1u);
  EXPECT_EQ(Get("/v1/apl", {{"offset", "5"}}).json(), json::array());

  ExpectError(Post("/v1/apl", {{"keyword", "travel ban"}}), 409, "conflict");
  ExpectError(Post("/v1/apl", {{"keyword", ""}}), 400, "bad_request");
  ExpectError(Post("/v1/apl", {{"lang", "en"}}), 400, "bad_request");
  ExpectError(api_.Handle({"POST", "/v1/apl", {}, "{not json"}), 400, "bad_request");
  ExpectError(Get("/v1/apl", {{"limit", "x"}}), 400, "bad_request");
  ExpectError(Get("/v1/apl", {{"offset", "-1"}}), 400, "bad_request");

  EXPECT_EQ(Delete("/v1/apl/travel ban").status, 200);
  EXPECT_EQ(Get("/v1/apl").json(), json::array());
  ExpectError(Delete("/v1/apl/travel ban"), 404, "not_found");
}

TEST_F(ApiTest, AplSearch) {
  for (const char* kw : {"travel ban", "brexit", "trump"}) {
    ASSERT_EQ(Post("/v1/apl", {{"keyword", kw}}).status, 201);
  }
  EXPECT_EQ(Get("/v1/apl/search", {{"q", "brexit"}}).json().size(), 1u);
  EXPECT_EQ(Get("/v1/apl/search", {{"q", "R"}}).json().size(), 3u);
  EXPECT_EQ(Get("/v1/apl/search", {{"q", "zzz"}}).json(), json::array());
}

TEST_F(ApiTest, TrendingEvolutionNext) {
  ASSERT_EQ(Post("/v1/apl", {{"keyword", "ban"}}).status, 201);
  ASSERT_TRUE(db_->RecordAplRun("ban", 2'000'000,
                                {{1'000'000, {1, 4, 2, 1}}, {1'300'000, {-2, 2, 0, 2}}})
                  .ok());
  clock_.Set(2'000'000);

  auto t = Get("/v1/apl/trending", {{"n", "5"}}).json();
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0]["keyword"], "ban");
  EXPECT_EQ(t[0]["matches"], 6);
  ExpectError(Get("/v1/apl/trending", {{"n", "0"}}), 400, "bad_request");

  auto evo = Get("/v1/apl/ban/evolution", {{"from", "0"}, {"to", "1300000"}}).json();
  ASSERT_EQ(evo.size(), 1u);
  EXPECT_EQ(evo[0]["ap"], 0.625);
  EXPECT_EQ(Get("/v1/apl/BAN/evolution").json().size(), 2u);
  ExpectError(Get("/v1/apl/ban/evolution", {{"from", "5"}, {"to", "5"}}), 400, "bad_request");
  ExpectError(Get("/v1/apl/nope/evolution"), 404, "not_found");

  EXPECT_EQ(Get("/v1/apl/ban/next", {{"after", "0"}}).json()["window_start"], 1'000'000);
  EXPECT_EQ(Get("/v1/apl/ban/next", {{"after", "1000000"}}).json()["window_start"], 1'300'000);
  auto none = Get("/v1/apl/ban/next", {{"after", "1300000"}});
  EXPECT_EQ(none.status, 204);
  EXPECT_TRUE(none.body.empty());
  ExpectError(Get("/v1/apl/ban/next"), 400, "bad_request");
  ExpectError(Get("/v1/apl/nope/next", {{"after", "0"}}), 404, "not_found");
}

TEST_F(ApiTest, QueriesLifecycle) {
  EXPECT_EQ(Get("/v1/queries/search", {{"q", ""}}).json(), json::array());
  const json q = {{"keyword", "Travel Ban"}, {"t_start", 0}, {"t_end", 1000}, {"window_ms", 100}};
  auto r = Post("/v1/queries", q);
  EXPECT_EQ(r.status, 202);
  const std::string id = r.json()["query_id"];
  EXPECT_NE(Post("/v1/queries", q).json()["query_id"], id);

  auto res = Get("/v1/queries/" + id + "/results").json();
  EXPECT_EQ(res["status"], "done");
  EXPECT_EQ(res["result"]["windows"].size(), 1u);
  EXPECT_EQ(res["result"]["totals"]["matches"], 4);

  auto found = Get("/v1/queries/search", {{"q", "travel"}}).json();
  EXPECT_EQ(found.size(), 2u);
  EXPECT_FALSE(found[0]["result"].contains("windows"));

  json bad = q;
  bad["window_ms"] = 5000;
  ExpectError(Post("/v1/queries", bad), 400, "bad_request");
  ExpectError(Post("/v1/queries", json{{"keyword", "x"}}), 400, "bad_request");
  ExpectError(Get("/v1/queries/q-424242/results"), 404, "not_found");
}

TEST(ApiPendingTest, RunningQueryHasNoResults) {
  ManualClock clock;
  auto db = std::move(*aggregation::ResultsDb::Open(":memory:"));
  std::atomic<bool> release{false};
  aggregation::QueryService svc(
      *db,
      [&](const aggregation::Query&) {
        while (!release) std::this_thread::sleep_for(std::chrono::milliseconds(1));
        return aggregation::AggregateResult{};
      },
      clock, {1});
  ApiService api(*db, svc, clock);
  auto r = api.Handle({"POST", "/v1/queries", {},
                       json{{"keyword", "x"}, {"t_start", 0}, {"t_end", 10}, {"window_ms", 5}}
                           .dump()});
  const std::string id = r.json()["query_id"];
  auto status = api.Handle({"GET", "/v1/queries/" + id + "/results", {}, ""}).json();
  EXPECT_NE(status["status"], "done");
  EXPECT_FALSE(status.contains("result"));
  EXPECT_EQ(api.Handle({"GET", "/v1/queries/search", {}, ""}).json(), json::array());
  release = true;
  svc.WaitIdle();
}

TEST(HttpServerTest, ServesOverHttp) {
  ManualClock clock(5);
  auto db = std::move(*aggregation::ResultsDb::Open(":memory:"));
  aggregation::QueryService svc(
      *db, [](const aggregation::Query&) { return aggregation::AggregateResult{}; }, clock, {0});
  ApiService api(*db, svc, clock);
  HttpServer server(api, 2);
  ASSERT_TRUE(server.Start("127.0.0.1", 0).ok());
  httplib::Client client("127.0.0.1", server.port());
  auto health = client.Get("/v1/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(health->get_header_value("Access-Control-Allow-Origin"), "*");

  auto add = client.Post("/v1/apl", R"({"keyword":"Travel Ban"})", "application/json");
  ASSERT_TRUE(add);
  EXPECT_EQ(add->status, 201);
  auto search = client.Get("/v1/apl/search?q=BAN");
  ASSERT_TRUE(search);
  EXPECT_EQ(json::parse(search->body).size(), 1u);
  auto del = client.Delete("/v1/apl/travel%20ban");
  ASSERT_TRUE(del);
  EXPECT_EQ(del->status, 200);
  auto missing = client.Get("/v1/apl/travel%20ban/next?after=0");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_EQ(json::parse(missing->body)["error"]["code"], "not_found");
  server.Stop();
}

TEST(ApiStateMachineTest, AgreesWithModel) {
  for (uint64_t seed : {1u, 2u}) {
    const auto report = testing::RunApiStateMachine(seed, 2500);
    EXPECT_EQ(report.divergences, 0) << report.first_divergence;
    for (const char* op : {"list_apl", "search_apl", "trending", "evolution", "next",
                           "delete_apl", "add_apl", "submit_query", "search_queries",
                           "query_results", "tick"}) {
      EXPECT_GT(report.op_counts.at(op), 100) << op;
    }
  }
}

}  // namespace
}  // namespace sentiflow::api
