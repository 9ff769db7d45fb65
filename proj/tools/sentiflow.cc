// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors
//
// Single binary running every service in-process, plus load generators,
// model training, one-shot queries and the desk-scale benchmarks.
//
// Exit codes: 0 ok, 1 internal error, 2 usage error.

#include <csignal>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "CLI11.hpp"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "sentiflow/aggregation/aggregate.h"
#include "sentiflow/common/log.h"
#include "sentiflow/harness/bench.h"
#include "sentiflow/harness/config.h"
#include "sentiflow/harness/system.h"
#include "sentiflow/harness/time_arg.h"
#include "sentiflow/ingestion/replay_source.h"
#include "sentiflow/ingestion/synthetic_source.h"
#include "sentiflow/sentiment/pipeline.h"

namespace sentiflow {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

int Fail(const absl::Status& s) {
  std::cerr << "error: " << s.ToString() << "\n";
  return s.code() == absl::StatusCode::kInvalidArgument ||
                 s.code() == absl::StatusCode::kOutOfRange
             ? kExitUsage
             : kExitInternal;
}

struct CommonFlags {
  std::string config_path;
  std::string store_dir;
  std::string results_db;
  std::string log_level = "info";
};

absl::StatusOr<harness::SystemConfig> ResolveConfig(const CommonFlags& f) {
  harness::SystemConfig config;
  if (!f.config_path.empty()) {
    auto loaded = harness::LoadConfig(f.config_path);
    if (!loaded.ok()) return loaded.status();
    config = *loaded;
  }
  if (!f.store_dir.empty()) config.storage.data_dir = f.store_dir;
  if (!f.results_db.empty()) config.aggregation.results_db = f.results_db;
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  return config;
}

void ApplyLogLevel(const std::string& level) {
  if (level == "debug") SetLogLevel(LogLevel::kDebug);
  if (level == "info") SetLogLevel(LogLevel::kInfo);
  if (level == "warn") SetLogLevel(LogLevel::kWarn);
  if (level == "error") SetLogLevel(LogLevel::kError);
  if (level == "off") SetLogLevel(LogLevel::kOff);
}

void AddCommon(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "System config file (JSON)");
  cmd->add_option("--store", f.store_dir, "Post storage directory (overrides config)");
  cmd->add_option("--results-db", f.results_db, "Results database path (overrides config)");
  cmd->add_option("--log-level", f.log_level, "debug|info|warn|error|off")
      ->check(CLI::IsMember({"debug", "info", "warn", "error", "off"}));
}

// serve ----------------------------------------------------------------

struct ServeFlags {
  CommonFlags common;
  std::string host;
  int port = -1;
  double duration_s = 0;
};

int RunServe(const ServeFlags& f) {
  ApplyLogLevel(f.common.log_level);
  auto config = ResolveConfig(f.common);
  if (!config.ok()) return Fail(config.status());
  if (!f.host.empty()) config->api.host = f.host;
  if (f.port >= 0) config->api.port = f.port;

  // Block termination signals before any thread starts so only sigwait
  // sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto system = harness::System::Create(*config);
  if (!system.ok()) return Fail(system.status());
  if (absl::Status s = (*system)->Start(); !s.ok()) return Fail(s);
  std::cout << nlohmann::json{{"event", "serving"}, {"port", (*system)->api_port()}}.dump()
            << std::endl;

  if (f.duration_s > 0) {
    timespec timeout{static_cast<time_t>(f.duration_s),
                     static_cast<long>((f.duration_s - static_cast<time_t>(f.duration_s)) * 1e9)};
    sigtimedwait(&signals, nullptr, &timeout);
  } else {
    int sig = 0;
    sigwait(&signals, &sig);
  }
  LogEvent(LogLevel::kInfo, "serve.shutdown");
  (*system)->Stop();
  return kExitOk;
}

// generate -------------------------------------------------------------

struct GenerateFlags {
  std::string out;
  uint64_t count = 1000;
  uint64_t seed = 1;
  double rate = 10;
  std::string start = "1488326400000";
  double bias = 0;
  std::vector<std::string> terms;
  double duplicate_fraction = 0;
};

int RunGenerate(const GenerateFlags& f) {
  auto start = harness::ParseTimestamp(f.start);
  if (!start.ok()) return Fail(start.status());
  ingestion::SyntheticOptions synth;
  synth.seed = f.seed;
  synth.rate_per_s = f.rate;
  synth.sentiment_bias = f.bias;
  synth.vocab = f.terms;
  synth.start_ms = *start;
  ManualClock clock(*start);
  ingestion::SyntheticSource source(synth, &clock);
  std::vector<ingestion::RawPost> posts;
  posts.reserve(f.count);
  std::mt19937_64 rng(f.seed);
  std::bernoulli_distribution dup(f.duplicate_fraction);
  for (uint64_t i = 0; i < f.count; ++i) {
    if (!posts.empty() && dup(rng)) {
      posts.push_back(posts[std::uniform_int_distribution<size_t>(0, posts.size() - 1)(rng)]);
    } else {
      posts.push_back(source.Generate(i));
    }
  }
  if (absl::Status s = ingestion::WriteReplayFile(f.out, posts); !s.ok()) return Fail(s);
  std::cout << nlohmann::json{{"written", posts.size()}, {"path", f.out}}.dump() << "\n";
  return kExitOk;
}

// replay ---------------------------------------------------------------

struct ReplayFlags {
  CommonFlags common;
  std::string input;
  double drain_timeout_s = 600;
};

int RunReplay(const ReplayFlags& f) {
  ApplyLogLevel(f.common.log_level);
  auto config = ResolveConfig(f.common);
  if (!config.ok()) return Fail(config.status());
  if (config->storage.data_dir.empty()) {
    LogEvent(LogLevel::kWarn, "replay.in_memory",
             {{"note", "no storage.data_dir; results vanish on exit"}});
  }
  auto replay = ingestion::ReplaySource::Open(f.input);
  if (!replay.ok()) return Fail(replay.status());
  auto system = harness::System::Create(*config);
  if (!system.ok()) return Fail(system.status());
  harness::StartOptions options;
  options.source = false;
  options.apl = false;
  options.api = false;
  if (absl::Status s = (*system)->Start(options); !s.ok()) return Fail(s);

  uint64_t ingested = 0, duplicates = 0, rejected = 0;
  while (auto post = (*replay)->Next()) {
    auto outcome = (*system)->ingestor().Ingest(*post);
    if (!outcome.ok()) {
      ++rejected;
    } else if (outcome->status == ingestion::IngestStatus::kIngested) {
      ++ingested;
    } else {
      ++duplicates;
    }
  }
  const auto timeout = std::chrono::milliseconds(static_cast<int64_t>(f.drain_timeout_s * 1000));
  const bool drained = (*system)->WaitDrained(timeout);
  (*system)->Stop();
  std::cout << nlohmann::json{{"read", (*replay)->size()},
                              {"malformed", (*replay)->malformed()},
                              {"ingested", ingested},
                              {"duplicates", duplicates},
                              {"rejected", rejected},
                              {"drained", drained},
                              {"stats", (*system)->Stats()}}
                   .dump()
            << "\n";
  return drained ? kExitOk : kExitInternal;
}

// train-model / classify -----------------------------------------------

struct TrainFlags {
  std::string data_dir;
  std::string lang = "en";
  std::string train;
  std::string out;
  int cv = 0;
};

int RunTrain(const TrainFlags& f) {
  const std::filesystem::path data =
      f.data_dir.empty() ? harness::DefaultDataDir() : std::filesystem::path(f.data_dir);
  const std::filesystem::path train =
      f.train.empty() ? data / "fixtures" / "labeled_300.tsv" : std::filesystem::path(f.train);
  auto resources = sentiment::LoadTextResources(data / f.lang);
  if (!resources.ok()) return Fail(resources.status());
  auto lexicon = sentiment::LoadPolarityLexicon(data / f.lang / "lexicon.tsv");
  if (!lexicon.ok()) return Fail(lexicon.status());
  auto corpus = sentiment::LoadLabeledTsv(train);
  if (!corpus.ok()) return Fail(corpus.status());
  nlohmann::json report = {{"docs", corpus->size()}};
  if (f.cv > 1) {
    auto cv = sentiment::CrossValidate(*corpus, *resources, *lexicon, f.cv);
    if (!cv.ok()) return Fail(cv.status());
    report["cv"] = {{"folds", cv->folds},
                    {"accuracy", cv->accuracy},
                    {"majority_baseline", cv->majority_baseline}};
  }
  auto model = sentiment::TrainNB(*corpus, *resources, *lexicon);
  if (!model.ok()) return Fail(model.status());
  if (!f.out.empty()) {
    if (absl::Status s = sentiment::SaveModel(*model, f.out); !s.ok()) return Fail(s);
    report["model"] = f.out;
  }
  std::cout << report.dump() << "\n";
  return kExitOk;
}

struct ClassifyFlags {
  std::string data_dir;
  std::string lang = "en";
  std::string model;
  std::string train;
  std::vector<std::string> texts;
};

int RunClassify(const ClassifyFlags& f) {
  const std::filesystem::path data =
      f.data_dir.empty() ? harness::DefaultDataDir() : std::filesystem::path(f.data_dir);
  const std::filesystem::path train =
      f.train.empty() ? data / "fixtures" / "labeled_300.tsv" : std::filesystem::path(f.train);
  auto pack = sentiment::LoadLanguagePack(data, f.lang, f.model, train);
  if (!pack.ok()) return Fail(pack.status());
  auto emit = [&](const std::string& text) {
    std::cout << sentiment::ClassifyText(text, *pack) << "\t" << text << "\n";
  };
  if (!f.texts.empty()) {
    for (const auto& t : f.texts) emit(t);
  } else {
    for (std::string line; std::getline(std::cin, line);) emit(line);
  }
  return kExitOk;
}

// query / export -------------------------------------------------------

struct QueryFlags {
  CommonFlags common;
  std::string keyword;
  std::string from;
  std::string to;
  int64_t window_ms = 3'600'000;
  std::string lang = "en";
  std::string format = "json";
  std::string out = "-";
  int scanners = 0;
};

void WriteCsv(const aggregation::AggregateResult& r, std::ostream& out) {
  out << "window_start,polarity_sum,matches,positives,negatives,neutral,ap,pos_ratio,"
         "neg_ratio,neutral_ratio\n";
  for (const auto& w : r.windows) {
    out << absl::StrFormat("%d,%d,%d,%d,%d,%d,%.17g,%.17g,%.17g,%.17g\n", w.window_start,
                           w.tuple.polarity_sum, w.tuple.matches, w.tuple.positives,
                           w.tuple.negatives, w.neutral(), *w.ap(), w.pos_ratio(),
                           w.neg_ratio(), w.neutral_ratio());
  }
}

void WriteTable(const aggregation::AggregateResult& r, std::ostream& out) {
  out << absl::StrFormat("%-24s %8s %6s %6s %6s %8s\n", "window_start", "matches", "pos",
                         "neg", "neu", "AP");
  for (const auto& w : r.windows) {
    out << absl::StrFormat("%-24s %8d %6d %6d %6d %8.4f\n",
                           harness::FormatTimestamp(w.window_start), w.tuple.matches,
                           w.tuple.positives, w.tuple.negatives, w.neutral(), *w.ap());
  }
  out << absl::StrFormat("total matches %d, skipped (unclassified) %d\n", r.totals.matches,
                         r.skipped);
}

int RunQuery(const QueryFlags& f) {
  ApplyLogLevel(f.common.log_level);
  auto from = harness::ParseTimestamp(f.from);
  if (!from.ok()) return Fail(from.status());
  auto to = harness::ParseTimestamp(f.to);
  if (!to.ok()) return Fail(to.status());
  const aggregation::Query query{f.keyword, *from, *to, f.lang, f.window_ms,
                                 aggregation::QueryMode::kOnDemand};
  if (absl::Status s = query.Validate(); !s.ok()) return Fail(s);

  auto config = ResolveConfig(f.common);
  if (!config.ok()) return Fail(config.status());
  auto store = storage::PostStore::Open(config->StorageConfig());
  if (!store.ok()) return Fail(store.status());
  auto result = aggregation::Aggregate(**store, query, {f.scanners});
  if (!result.ok()) return Fail(result.status());

  std::ofstream file;
  if (f.out != "-") {
    file.open(f.out, std::ios::trunc);
    if (!file) return Fail(absl::UnavailableError("cannot write " + f.out));
  }
  std::ostream& out = f.out == "-" ? std::cout : file;
  if (f.format == "csv") {
    WriteCsv(*result, out);
  } else if (f.format == "table") {
    WriteTable(*result, out);
  } else {
    out << aggregation::ResultToJson(*result).dump() << "\n";
  }
  return out ? kExitOk : kExitInternal;
}

struct ExportFlags {
  CommonFlags common;
  std::string table = "automated";
  std::string out = "-";
};

int RunExport(const ExportFlags& f) {
  auto config = ResolveConfig(f.common);
  if (!config.ok()) return Fail(config.status());
  auto db = aggregation::ResultsDb::Open(config->aggregation.results_db);
  if (!db.ok()) return Fail(db.status());
  const auto table = f.table == "automated" ? aggregation::ResultsTable::kAutomated
                                            : aggregation::ResultsTable::kOnDemand;
  std::ofstream file;
  if (f.out != "-") {
    file.open(f.out, std::ios::trunc);
    if (!file) return Fail(absl::UnavailableError("cannot write " + f.out));
  }
  std::ostream& out = f.out == "-" ? std::cout : file;
  if (absl::Status s = (*db)->ExportCsv(table, out); !s.ok()) return Fail(s);
  return kExitOk;
}

// benchmarks -----------------------------------------------------------

int RunBenchIngest(const harness::IngestBenchOptions& options, bool json) {
  const auto rows = harness::BenchIngest(options);
  if (json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
      out.push_back({{"threads", r.threads},
                     {"ingested", r.ingested},
                     {"elapsed_s", r.elapsed_s},
                     {"posts_per_s", r.posts_per_s}});
    }
    std::cout << nlohmann::json{{"rate_per_s", options.rate_per_s}, {"rows", out}}.dump()
              << "\n";
  } else {
    std::cout << harness::FormatIngestTable(options, rows);
  }
  return kExitOk;
}

int RunBenchPipeline(harness::PipelineBenchOptions options, bool json) {
  if (options.data_dir.empty()) options.data_dir = harness::DefaultDataDir();
  if (options.train_path.empty()) {
    options.train_path = options.data_dir / "fixtures" / "labeled_300.tsv";
  }
  auto rows = harness::BenchPipeline(options);
  if (!rows.ok()) return Fail(rows.status());
  if (json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : *rows) {
      out.push_back({{"hints", r.hints},
                     {"posts", r.posts},
                     {"stored", r.stored},
                     {"elapsed_s", r.elapsed_s},
                     {"completion_pct", r.completion_pct}});
    }
    std::cout << out.dump() << "\n";
  } else {
    std::cout << harness::FormatPipelineTable(*rows);
  }
  return kExitOk;
}

int RunBenchAggregate(const harness::AggregateBenchOptions& options, bool json) {
  auto report = harness::BenchAggregate(options);
  if (!report.ok()) return Fail(report.status());
  std::cout << (json ? report->ToJson().dump() + "\n" : report->Format());
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"sentiflow: keyword sentiment analytics over a post stream"};
  app.require_subcommand(1);
  int rc = kExitOk;

  ServeFlags serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run every service until SIGINT/SIGTERM");
  AddCommon(serve_cmd, serve.common);
  serve_cmd->add_option("--host", serve.host, "API bind address");
  serve_cmd->add_option("--port", serve.port, "API port (0 picks a free one)");
  serve_cmd->add_option("--duration-s", serve.duration_s, "Stop after this many seconds");
  serve_cmd->callback([&] { rc = RunServe(serve); });

  GenerateFlags gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic replay file (JSONL)");
  gen_cmd->add_option("--out", gen.out, "Output path")->required();
  gen_cmd->add_option("--count", gen.count, "Number of posts");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--rate", gen.rate, "Posts per second of created_at spacing");
  gen_cmd->add_option("--start", gen.start, "created_at of the first post (ms or RFC 3339)");
  gen_cmd->add_option("--bias", gen.bias, "Sentiment bias in [-1, 1]")
      ->check(CLI::Range(-1.0, 1.0));
  gen_cmd->add_option("--terms", gen.terms, "Topic terms")->delimiter(',');
  gen_cmd->add_option("--duplicates", gen.duplicate_fraction,
                      "Fraction of lines repeating an earlier post")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->callback([&] { rc = RunGenerate(gen); });

  ReplayFlags replay;
  auto* replay_cmd = app.add_subcommand("replay", "Ingest a replay file and classify it");
  AddCommon(replay_cmd, replay.common);
  replay_cmd->add_option("--input", replay.input, "Replay file (JSONL)")->required();
  replay_cmd->add_option("--drain-timeout-s", replay.drain_timeout_s, "Pipeline drain budget");
  replay_cmd->callback([&] { rc = RunReplay(replay); });

  TrainFlags train;
  auto* train_cmd = app.add_subcommand("train-model", "Train and save a sentiment model");
  train_cmd->add_option("--data-dir", train.data_dir, "Language resources root");
  train_cmd->add_option("--lang", train.lang, "Language");
  train_cmd->add_option("--train", train.train, "Labeled TSV (label<TAB>text)");
  train_cmd->add_option("--out", train.out, "Model output path");
  train_cmd->add_option("--cv", train.cv, "Also report k-fold cross validation");
  train_cmd->callback([&] { rc = RunTrain(train); });

  ClassifyFlags classify;
  auto* classify_cmd = app.add_subcommand("classify", "Print the polarity of each text");
  classify_cmd->add_option("--data-dir", classify.data_dir, "Language resources root");
  classify_cmd->add_option("--lang", classify.lang, "Language");
  classify_cmd->add_option("--model", classify.model, "Saved model (trained on the fly if unset)");
  classify_cmd->add_option("--train", classify.train, "Labeled TSV used when no model is given");
  classify_cmd->add_option("texts", classify.texts, "Texts (stdin lines when omitted)");
  classify_cmd->callback([&] { rc = RunClassify(classify); });

  QueryFlags query;
  auto* query_cmd = app.add_subcommand("query", "One-shot windowed keyword aggregation");
  AddCommon(query_cmd, query.common);
  query_cmd->add_option("--keyword", query.keyword, "Keyword or phrase")->required();
  query_cmd->add_option("--from", query.from, "Interval start (ms or RFC 3339)")->required();
  query_cmd->add_option("--to", query.to, "Interval end, exclusive")->required();
  query_cmd->add_option("--window-ms", query.window_ms, "Window size");
  query_cmd->add_option("--lang", query.lang, "Language filter (empty for all)");
  query_cmd->add_option("--format", query.format, "json|csv|table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  query_cmd->add_flag_callback("--csv", [&] { query.format = "csv"; }, "Same as --format csv");
  query_cmd->add_option("--out", query.out, "Output file ('-' for stdout)");
  query_cmd->add_option("--scanners", query.scanners, "Concurrent bucket scanners (0 = all)");
  query_cmd->callback([&] { rc = RunQuery(query); });

  ExportFlags exp;
  auto* export_cmd = app.add_subcommand("export", "Dump a results table as CSV");
  AddCommon(export_cmd, exp.common);
  export_cmd->add_option("--table", exp.table, "automated|ondemand")
      ->check(CLI::IsMember({"automated", "ondemand"}));
  export_cmd->add_option("--out", exp.out, "Output file ('-' for stdout)");
  export_cmd->callback([&] { rc = RunExport(exp); });

  harness::IngestBenchOptions bi;
  bool bi_json = false;
  auto* bi_cmd = app.add_subcommand("bench-ingest", "Ingestion throughput per thread count");
  bi_cmd->add_option("--rate", bi.rate_per_s, "Synthetic posts per second");
  bi_cmd->add_option("--duration", bi.duration_s, "Seconds per thread count");
  bi_cmd->add_option("--threads", bi.threads, "Thread counts")->delimiter(',');
  bi_cmd->add_option("--seed", bi.seed, "Generator seed");
  bi_cmd->add_flag("--json", bi_json, "JSON output");
  bi_cmd->callback([&] { rc = RunBenchIngest(bi, bi_json); });

  harness::PipelineBenchOptions bp;
  bool bp_json = false;
  std::string bp_data;
  auto* bp_cmd = app.add_subcommand("bench-pipeline", "Share of a preloaded load classified");
  bp_cmd->add_option("--hints", bp.hints, "Parallelism hint vectors, e.g. 1-1-1-1-2-6-2")
      ->delimiter(',');
  bp_cmd->add_option("--posts", bp.posts, "Posts preloaded into the input set");
  bp_cmd->add_option("--duration", bp.duration_s, "Time budget in seconds");
  bp_cmd->add_option("--data-dir", bp_data, "Language resources root");
  bp_cmd->add_flag("--json", bp_json, "JSON output");
  bp_cmd->callback([&] {
    bp.data_dir = bp_data;
    rc = RunBenchPipeline(bp, bp_json);
  });

  harness::AggregateBenchOptions ba;
  bool ba_json = false;
  auto* ba_cmd = app.add_subcommand("bench-aggregate", "Aggregation latency sweeps");
  ba_cmd->add_option("--sizes", ba.sizes, "Dataset sizes (posts)")->delimiter(',');
  ba_cmd->add_option("--scanners", ba.scanners, "Scanner counts (default 1..cores)")
      ->delimiter(',');
  ba_cmd->add_option("--repeats", ba.repeats, "Runs per point (median reported)");
  ba_cmd->add_option("--parallel-queries", ba.parallel_queries, "Concurrent queries per run");
  ba_cmd->add_option("--keyword", ba.keyword, "Query keyword");
  ba_cmd->add_flag("--json", ba_json, "JSON output");
  ba_cmd->callback([&] { rc = RunBenchAggregate(ba, ba_json); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  return rc;
}

}  // namespace
}  // namespace sentiflow

int main(int argc, char** argv) {
  try {
    return sentiflow::Main(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
