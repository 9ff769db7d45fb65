// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <limits>

#include "httplib.h"
#include "json.hpp"
#include "sentiflow/harness/bench.h"
#include "sentiflow/harness/config.h"
#include "sentiflow/harness/system.h"
#include "sentiflow/ingestion/replay_source.h"
#include "unit/test_util.h"

namespace sentiflow::harness {
namespace {

using nlohmann::json;
using std::chrono::seconds;

const std::string kData = SENTIFLOW_DATA_DIR;
const std::string kCli = SENTIFLOW_CLI;
const std::string kCorpus = kData + "/fixtures/replay_corpus.jsonl";

json Golden() {
  std::ifstream in(kData + "/fixtures/replay_golden.json");
  return json::parse(in);
}

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun RunCli(const std::string& args) {
  CliRun run;
  FILE* p = popen((kCli + " " + args + " 2>/dev/null").c_str(), "r");
  if (p == nullptr) return run;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), p)) > 0) run.out.append(buf, n);
  const int status = pclose(p);
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

std::string Quote(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

void ExpectGoldenWindows(const json& windows, const json& golden) {
  ASSERT_EQ(windows.size(), golden.size()) << windows.dump();
  for (size_t i = 0; i < golden.size(); ++i) {
    SCOPED_TRACE(i);
    for (const char* k : {"window_start", "polarity_sum", "matches", "positives", "negatives"}) {
      EXPECT_EQ(windows[i].at(k).get<int64_t>(), golden[i].at(k).get<int64_t>()) << k;
    }
    EXPECT_NEAR(windows[i].at("ap").get<double>(), golden[i].at("ap").get<double>(), 1e-12);
  }
}

size_t Classified(storage::PostStore& store) {
  auto it = *store.ScanRange(0, std::numeric_limits<TimestampMs>::max());
  size_t n = 0;
  for (; it->Valid(); it->Next()) n += it->record().polarity.has_value();
  return n;
}

struct IngestCounts {
  size_t ingested = 0;
  size_t duplicates = 0;
};

IngestCounts IngestFile(System& system, const std::string& path) {
  IngestCounts counts;
  auto replay = *ingestion::ReplaySource::Open(path);
  while (auto post = replay->Next()) {
    auto out = system.ingestor().Ingest(*post);
    EXPECT_TRUE(out.ok());
    if (out.ok() && out->status == ingestion::IngestStatus::kIngested) {
      ++counts.ingested;
    } else {
      ++counts.duplicates;
    }
  }
  return counts;
}

SystemConfig TestConfig(const std::filesystem::path& dir) {
  SystemConfig c;
  c.storage.data_dir = (dir / "store").string();
  c.api.port = 0;
  c.api.threads = 2;
  return c;
}

// Submits through the service and waits for the pool to finish it.
json QueryViaApi(System& system, const json& query) {
  api::Request submit{"POST", "/v1/queries", {}, query.dump()};
  auto accepted = system.api().Handle(submit);
  EXPECT_EQ(accepted.status, 202) << accepted.body;
  const std::string id = accepted.json().at("query_id");
  system.queries().WaitIdle();
  auto done = system.api().Handle({"GET", "/v1/queries/" + id + "/results", {}, ""});
  EXPECT_EQ(done.status, 200);
  return done.json();
}

TEST(ReplayTest, HttpQueryReproducesGoldenSeries) {
  const json golden = Golden();
  testing::TempDir dir;
  auto system = *System::Create(TestConfig(dir.path()));
  StartOptions options;
  options.source = false;
  options.apl = false;
  ASSERT_TRUE(system->Start(options).ok());

  const IngestCounts counts = IngestFile(*system, kCorpus);
  EXPECT_EQ(counts.ingested, golden.at("unique_posts").get<size_t>());
  EXPECT_EQ(counts.ingested + counts.duplicates, golden.at("lines").get<size_t>());
  ASSERT_TRUE(system->WaitDrained(std::chrono::minutes(2)));
  EXPECT_EQ(Classified(system->store()), counts.ingested);

  httplib::Client client("127.0.0.1", system->api_port());
  auto posted = client.Post("/v1/queries", golden.at("query").dump(), "application/json");
  ASSERT_TRUE(posted);
  ASSERT_EQ(posted->status, 202);
  const std::string id = json::parse(posted->body).at("query_id");
  json record;
  ASSERT_TRUE(testing::WaitUntil(
      [&] {
        auto r = client.Get("/v1/queries/" + id + "/results");
        if (!r || r->status != 200) return false;
        record = json::parse(r->body);
        return record.at("status") == "done";
      },
      seconds(30), std::chrono::milliseconds(20)));
  ExpectGoldenWindows(record.at("result").at("windows"), golden.at("windows"));
  EXPECT_EQ(record.at("result").at("skipped"), 0);
  system->Stop();
}

TEST(ReplayTest, CliQueryMatchesGoldenAndApi) {
  const json golden = Golden();
  const json& q = golden.at("query");
  testing::TempDir dir;
  const auto store = dir.path() / "store";

  auto replay = RunCli("replay --log-level off --store " + Quote(store) + " --input " +
                       Quote(kCorpus));
  ASSERT_EQ(replay.exit_code, 0) << replay.out;
  const json stats = json::parse(replay.out);
  EXPECT_EQ(stats.at("ingested"), golden.at("unique_posts"));
  EXPECT_TRUE(stats.at("drained").get<bool>());

  const std::string query_args =
      " --log-level off --store " + Quote(store) + " --keyword '" +
      q.at("keyword").get<std::string>() + "' --from " + q.at("t_start").dump() + " --to " +
      q.at("t_end").dump() + " --window-ms " + q.at("window_ms").dump() + " --lang " +
      q.at("lang").get<std::string>();
  auto cli = RunCli("query --format json" + query_args);
  ASSERT_EQ(cli.exit_code, 0) << cli.out;
  const json cli_result = json::parse(cli.out);
  ExpectGoldenWindows(cli_result.at("windows"), golden.at("windows"));

  auto csv = RunCli("query --csv" + query_args);
  ASSERT_EQ(csv.exit_code, 0);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'),
            static_cast<long>(golden.at("windows").size()) + 1);

  // The same store reopened behind the API gives the identical result.
  SystemConfig config = TestConfig(dir.path());
  auto system = *System::Create(config);
  ASSERT_TRUE(system->Start({false, false, false, false}).ok());
  const json api_record = QueryViaApi(*system, q);
  ASSERT_EQ(api_record.at("status"), "done");
  EXPECT_EQ(api_record.at("result").at("windows"), cli_result.at("windows"));
  EXPECT_EQ(api_record.at("result").at("totals"), cli_result.at("totals"));
  system->Stop();
}

TEST(CliTest, InvalidQueryExitsWithUsageCode) {
  auto run = RunCli("query --keyword x --from 10 --to 5 --window-ms 1");
  EXPECT_EQ(run.exit_code, 2);
  EXPECT_EQ(RunCli("no-such-command").exit_code, 2);
}

TEST(CliTest, ClassifyFromArguments) {
  auto run = RunCli("classify 'I love the coffee here' 'This weather is terrible'");
  ASSERT_EQ(run.exit_code, 0);
  EXPECT_EQ(run.out, "1\tI love the coffee here\n-1\tThis weather is terrible\n");
}

TEST(ServeTest, AnswersHealthAndAplOverHttp) {
  testing::TempDir dir;
  FILE* p = popen((kCli + " serve --log-level off --port 0 --duration-s 3 --store " +
                   Quote(dir.path() / "store") + " --results-db " +
                   Quote(dir.path() / "results.db") + " 2>/dev/null")
                      .c_str(),
                  "r");
  ASSERT_NE(p, nullptr);
  char line[256] = {};
  ASSERT_NE(fgets(line, sizeof(line), p), nullptr);
  const json banner = json::parse(line);
  ASSERT_EQ(banner.at("event"), "serving");
  httplib::Client client("127.0.0.1", banner.at("port").get<int>());
  auto health = client.Get("/v1/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(json::parse(health->body).at("status"), "ok");
  auto added = client.Post("/v1/apl", R"({"keyword":"travel ban"})", "application/json");
  ASSERT_TRUE(added);
  EXPECT_EQ(added->status, 201);
  auto listed = client.Get("/v1/apl");
  ASSERT_TRUE(listed);
  EXPECT_EQ(json::parse(listed->body).size(), 1u);
  const int status = pclose(p);
  EXPECT_TRUE(WIFEXITED(status) && WEXITSTATUS(status) == 0);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "results.db"));
}

TEST(RestartTest, BufferSnapshotCarriesUnclassifiedPosts) {
  testing::TempDir dir;
  SystemConfig config = TestConfig(dir.path());
  config.buffer.snapshot_path = (dir.path() / "buffer.snapshot").string();
  size_t ingested = 0;
  {
    auto first = *System::Create(config);
    ASSERT_TRUE(first->Start({false, false, false, false}).ok());
    ingested = IngestFile(*first, kCorpus).ingested;
    first->Stop();
    EXPECT_EQ(Classified(first->store()), 0u);
  }
  auto second = *System::Create(config);
  EXPECT_EQ(second->store().size(), ingested);
  ASSERT_TRUE(second->Start({false, true, false, false}).ok());
  ASSERT_TRUE(second->WaitDrained(std::chrono::minutes(2)));
  second->Stop();
  EXPECT_EQ(Classified(second->store()), ingested);
  // Redelivered marks still suppress duplicates after the restart.
  auto third = *System::Create(config);
  ASSERT_TRUE(third->Start({false, false, false, false}).ok());
  EXPECT_EQ(IngestFile(*third, kCorpus).ingested, 0u);
  third->Stop();
}

TEST(ConfigTest, EmptyObjectIsDefaults) {
  auto c = ConfigFromJson(json::object());
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_TRUE(c->Validate().ok());
  EXPECT_EQ(ConfigToJson(*c), ConfigToJson(SystemConfig{}));
  EXPECT_EQ(c->sentiment.hints, "1-1-1-1-2-6-2");
  EXPECT_EQ(c->aggregation.apl_window_ms, 300000);
}

TEST(ConfigTest, UnknownKeysAndBadValuesAreRejected) {
  EXPECT_FALSE(ConfigFromJson({{"storage", {{"num_bucket", 4}}}}).ok());
  EXPECT_FALSE(ConfigFromJson({{"extra", 1}}).ok());
  EXPECT_FALSE(ConfigFromJson({{"storage", {{"num_buckets", "four"}}}}).ok());
  auto bad_hints = ConfigFromJson({{"sentiment", {{"hints", "1-1"}}}});
  EXPECT_TRUE(!bad_hints.ok() || !bad_hints->Validate().ok());
}

TEST(ConfigTest, ExampleFileLoadsAndRoundTrips) {
  auto c = LoadConfig(std::filesystem::path(SENTIFLOW_SOURCE_DIR) / "config" /
                      "sentiflow.example.json");
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_TRUE(c->Validate().ok());
  EXPECT_EQ(c->source.kind, "synthetic");
  auto again = ConfigFromJson(ConfigToJson(*c));
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(ConfigToJson(*again), ConfigToJson(*c));
  EXPECT_FALSE(LoadConfig("/nonexistent/sentiflow.json").ok());
}

TEST(BenchTest, FitLineOnExactAndNoisyData) {
  std::vector<double> xs = {1, 2, 3, 4, 5};
  std::vector<double> ys = {3, 5, 7, 9, 11};
  auto fit = *FitLine(xs, ys);
  EXPECT_NEAR(fit.slope, 2, 1e-12);
  EXPECT_NEAR(fit.intercept, 1, 1e-12);
  EXPECT_NEAR(fit.r2, 1, 1e-12);
  // Hand-computed: slope 0.6, intercept 2.2, r2 0.6.
  auto noisy = *FitLine(xs, std::vector<double>{2, 4, 5, 4, 5});
  EXPECT_NEAR(noisy.slope, 0.6, 1e-12);
  EXPECT_NEAR(noisy.intercept, 2.2, 1e-12);
  EXPECT_NEAR(noisy.r2, 0.6, 1e-12);
  EXPECT_FALSE(FitLine(std::vector<double>{1, 1}, std::vector<double>{1, 2}).ok());
  EXPECT_TRUE(StrictlyDecreasing(std::vector<double>{3, 2, 1}));
  EXPECT_FALSE(StrictlyDecreasing(std::vector<double>{3, 3, 1}));
  EXPECT_TRUE(StrictlyDecreasing(std::vector<double>{7}));
}

TEST(BenchTest, IngestRateFollowsTheClock) {
  IngestBenchOptions options;
  options.rate_per_s = 500;
  options.duration_s = 1;
  options.threads = {1, 2};
  auto rows = BenchIngest(options);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& row : rows) {
    EXPECT_NEAR(row.posts_per_s, 500, 75) << row.threads;
  }
  EXPECT_NE(FormatIngestTable(options, rows).find("configured rate"), std::string::npos);
}

TEST(BenchTest, AggregateReportShape) {
  AggregateBenchOptions options;
  options.sizes = {2000, 4000};
  options.scanners = {1, 2};
  options.repeats = 1;
  auto report = BenchAggregate(options);
  ASSERT_TRUE(report.ok()) << report.status();
  ASSERT_EQ(report->size_sweep.size(), 2u);
  ASSERT_EQ(report->scanner_sweep.size(), 2u);
  EXPECT_EQ(report->scanner_sweep[0].matches, report->scanner_sweep[1].matches);
  EXPECT_EQ(report->scanner_sweep[0].posts, 4000u);
  EXPECT_GT(report->size_sweep[1].matches, report->size_sweep[0].matches);
  EXPECT_TRUE(report->ToJson().contains("fit"));
}

}  // namespace
}  // namespace sentiflow::harness
