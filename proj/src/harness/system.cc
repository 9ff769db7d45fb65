// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/harness/system.h"

#include "absl/strings/str_cat.h"
#include "sentiflow/aggregation/aggregate.h"
#include "sentiflow/common/log.h"
#include "sentiflow/ingestion/replay_source.h"
#include "sentiflow/ingestion/synthetic_source.h"

namespace sentiflow::harness {

System::System(SystemConfig config, const Clock* clock)
    : config_(std::move(config)), clock_(clock) {}

absl::StatusOr<std::unique_ptr<System>> System::Create(SystemConfig config,
                                                       const Clock* clock) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  std::unique_ptr<System> sys(new System(std::move(config), clock));
  if (absl::Status s = sys->Init(); !s.ok()) return s;
  return sys;
}

absl::Status System::Init() {
  auto store = storage::PostStore::Open(config_.StorageConfig());
  if (!store.ok()) return store.status();
  store_ = std::move(*store);

  buffers_ = std::make_unique<buffer::BufferStore>(clock_);
  if (!config_.buffer.snapshot_path.empty() &&
      std::filesystem::exists(config_.buffer.snapshot_path)) {
    if (absl::Status s = buffers_->LoadSnapshot(config_.buffer.snapshot_path); !s.ok()) return s;
  }
  ingestion::IngestOptions ingest;
  ingest.dedup_ttl_s = config_.buffer.dedup_ttl_s;
  ingestor_ = std::make_unique<ingestion::Ingestor>(*store_, *buffers_, ingest);

  for (const std::string& lang : config_.sentiment.langs) {
    auto pack = sentiment::LoadLanguagePack(config_.DataDir(), lang, config_.sentiment.model_path,
                                            config_.TrainPath());
    if (!pack.ok()) {
      return absl::Status(pack.status().code(),
                          absl::StrCat("language pack ", lang, ": ", pack.status().message()));
    }
    packs_.emplace(lang, std::move(*pack));
  }

  auto results = aggregation::ResultsDb::Open(config_.aggregation.results_db);
  if (!results.ok()) return results.status();
  results_ = std::move(*results);
  const aggregation::AggregateFn fn =
      aggregation::MakeAggregateFn(*store_, {config_.aggregation.scanners});
  queries_ = std::make_unique<aggregation::QueryService>(
      *results_, fn, *clock_,
      aggregation::QueryServiceConfig{config_.aggregation.query_workers});
  apl_ = std::make_unique<aggregation::AplScheduler>(*results_, fn, *clock_, config_.AplConfig());
  api::ApiConfig api_config;
  api_config.cors_origin = config_.api.cors_origin;
  api_ = std::make_unique<api::ApiService>(*results_, *queries_, *clock_, api_config,
                                           [this] { return Stats(); });
  return absl::OkStatus();
}

System::~System() { Stop(); }

absl::Status System::Start(StartOptions options) {
  if (started_) return absl::FailedPreconditionError("system already started");
  started_ = true;
  if (options.pipeline) {
    auto topo_config = config_.TopologyConfig();
    if (!topo_config.ok()) return topo_config.status();
    auto topology = sentiment::Topology::Start(*topo_config, packs_, *buffers_);
    if (!topology.ok()) return topology.status();
    topology_ = std::move(*topology);
    storer_ = std::make_unique<storer::PolarityStorer>(*buffers_, *store_,
                                                       store_->num_buckets(), config_.storer);
    storer_->Start();
  }
  if (options.apl) apl_->Start();
  if (options.api) {
    http_ = std::make_unique<api::HttpServer>(*api_, config_.api.threads);
    if (absl::Status s = http_->Start(config_.api.host, config_.api.port); !s.ok()) return s;
  }
  if (options.source && config_.source.kind != "none") {
    if (config_.source.kind == "replay") {
      auto replay = ingestion::ReplaySource::Open(config_.source.replay_path);
      if (!replay.ok()) return replay.status();
      source_ = std::move(*replay);
    } else {
      ingestion::SyntheticOptions synth;
      synth.seed = config_.source.seed;
      synth.rate_per_s = config_.source.rate_per_s;
      synth.sentiment_bias = config_.source.sentiment_bias;
      synth.vocab = config_.source.terms;
      source_ = std::make_unique<ingestion::SyntheticSource>(synth, clock_);
    }
    std::vector<std::string> terms = config_.source.terms;
    if (terms.empty()) terms = ingestion::SyntheticSource::DefaultTopics();
    spiders_ = std::jthread([this, terms](std::stop_token stop) {
      auto report = ingestion::RunSpiders(terms, *source_, config_.spider, *ingestor_,
                                          *clock_, stop);
      if (report.ok()) {
        LogEvent(LogLevel::kInfo, "spiders.done", report->ToJson());
      } else {
        LogEvent(LogLevel::kError, "spiders.failed", {{"error", report.status().ToString()}});
      }
    });
  }
  LogEvent(LogLevel::kInfo, "system.started",
           {{"hints", config_.sentiment.hints}, {"api_port", api_port()}});
  return absl::OkStatus();
}

bool System::Drained() const {
  if (buffers_->Size(buffer::kInputSet) != 0 || buffers_->Size(buffer::kOutputSet) != 0) {
    return false;
  }
  return !topology_ || topology_->stats().in_flight == 0;
}

bool System::WaitDrained(std::chrono::milliseconds timeout) const {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  while (!Drained()) {
    if (std::chrono::steady_clock::now() >= deadline) return false;
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  return true;
}

void System::Stop(std::chrono::milliseconds drain_timeout) {
  if (!started_) return;
  started_ = false;
  if (spiders_.joinable()) {
    spiders_.request_stop();
    spiders_.join();
  }
  if (topology_ && !WaitDrained(drain_timeout)) {
    LogEvent(LogLevel::kWarn, "system.drain_timeout",
             {{"input", buffers_->Size(buffer::kInputSet)},
              {"output", buffers_->Size(buffer::kOutputSet)}});
  }
  if (http_) http_->Stop();
  apl_->Stop();
  if (topology_) topology_->Stop();
  if (storer_) {
    storer_->Stop();
    while (storer_->DrainOnce() > 0) {
    }
  }
  queries_->WaitIdle();
  if (absl::Status s = store_->Flush(); !s.ok()) {
    LogEvent(LogLevel::kError, "system.flush_failed", {{"error", s.ToString()}});
  }
  if (!config_.buffer.snapshot_path.empty()) {
    if (absl::Status s = buffers_->SaveSnapshot(config_.buffer.snapshot_path); !s.ok()) {
      LogEvent(LogLevel::kError, "system.snapshot_failed", {{"error", s.ToString()}});
    }
  }
  LogEvent(LogLevel::kInfo, "system.stopped", Stats());
}

nlohmann::json System::Stats() const {
  nlohmann::json j = {
      {"posts_stored", store_->size()},
      {"buffer",
       {{"input", buffers_->Size(buffer::kInputSet)},
        {"output", buffers_->Size(buffer::kOutputSet)},
        {"dedup", buffers_->Size(buffer::kDedupSet)}}},
      {"apl", {{"keywords", results_->AplCount()}, {"cycles", apl_->cycles()}}},
      {"queries", {{"queued", queries_->queued()}, {"running", queries_->running()}}},
  };
  if (topology_) j["topology"] = topology_->stats().ToJson();
  if (storer_) j["storer"] = storer_->stats().ToJson();
  return j;
}

}  // namespace sentiflow::harness
