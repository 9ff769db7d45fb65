// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/harness/config.h"

#include <fstream>
#include <set>

#include "absl/strings/str_cat.h"

#ifndef SENTIFLOW_DEFAULT_DATA_DIR
#define SENTIFLOW_DEFAULT_DATA_DIR "data"
#endif

namespace sentiflow::harness {
namespace {

using nlohmann::json;

// Reads known keys of one section and rejects the rest.
class Section {
 public:
  Section(const json& parent, const char* name) : name_(name) {
    if (parent.contains(name)) {
      j_ = parent.at(name);
      if (!j_.is_object()) status_ = absl::InvalidArgumentError(absl::StrCat(name, ": not an object"));
    } else {
      j_ = json::object();
    }
  }

  template <typename T>
  Section& Get(const char* key, T& out) {
    seen_.insert(key);
    if (!status_.ok() || !j_.contains(key)) return *this;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      status_ = absl::InvalidArgumentError(absl::StrCat(name_, ".", key, ": ", e.what()));
    }
    return *this;
  }

  absl::Status Finish() {
    if (!status_.ok()) return status_;
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) {
        return absl::InvalidArgumentError(absl::StrCat("unknown config key ", name_, ".", k));
      }
    }
    return absl::OkStatus();
  }

 private:
  std::string name_;
  json j_;
  std::set<std::string> seen_;
  absl::Status status_;
};

}  // namespace

std::filesystem::path DefaultDataDir() { return SENTIFLOW_DEFAULT_DATA_DIR; }

absl::Status SystemConfig::Validate() const {
  if (storage.num_buckets < 1) return absl::InvalidArgumentError("storage.num_buckets must be >= 1");
  if (storage.sync != "always" && storage.sync != "interval" && storage.sync != "never") {
    return absl::InvalidArgumentError("storage.sync must be always, interval or never");
  }
  if (buffer.dedup_ttl_s <= 0) return absl::InvalidArgumentError("buffer.dedup_ttl_s must be positive");
  if (source.kind != "none" && source.kind != "synthetic" && source.kind != "replay") {
    return absl::InvalidArgumentError("source.kind must be none, synthetic or replay");
  }
  if (source.kind == "replay" && source.replay_path.empty()) {
    return absl::InvalidArgumentError("source.replay_path is required for a replay source");
  }
  if (source.rate_per_s <= 0) return absl::InvalidArgumentError("source.rate_per_s must be positive");
  if (sentiment.langs.empty()) return absl::InvalidArgumentError("sentiment.langs is empty");
  if (absl::Status s = spider.Validate(); !s.ok()) return s;
  if (absl::Status s = storer.Validate(); !s.ok()) return s;
  auto topo = TopologyConfig();
  if (!topo.ok()) return topo.status();
  if (absl::Status s = AplConfig().Validate(); !s.ok()) return s;
  if (aggregation.query_workers < 0) {
    return absl::InvalidArgumentError("aggregation.query_workers must be >= 0");
  }
  if (api.port < 0 || api.port > 65535) return absl::InvalidArgumentError("api.port out of range");
  if (api.threads < 1) return absl::InvalidArgumentError("api.threads must be >= 1");
  return absl::OkStatus();
}

storage::StorageConfig SystemConfig::StorageConfig() const {
  storage::StorageConfig c;
  c.num_buckets = storage.num_buckets;
  c.data_dir = storage.data_dir;
  if (storage.sync == "always") {
    c.sync = storage::SyncPolicy::Always();
  } else if (storage.sync == "never") {
    c.sync = storage::SyncPolicy::Never();
  } else {
    c.sync = storage::SyncPolicy::Interval(storage.sync_interval_ms);
  }
  return c;
}

absl::StatusOr<sentiment::TopologyConfig> SystemConfig::TopologyConfig() const {
  sentiment::TopologyConfig c;
  auto hints = sentiment::ParseHints(sentiment.hints);
  if (!hints.ok()) return hints.status();
  c.hints = *hints;
  c.queue_capacity = sentiment.queue_capacity;
  c.batch_size = sentiment.batch_size;
  c.spout_workers = sentiment.spout_workers;
  c.lease_s = sentiment.lease_s;
  c.default_lang = sentiment.langs.front();
  if (absl::Status s = c.Validate(); !s.ok()) return s;
  return c;
}

aggregation::AplConfig SystemConfig::AplConfig() const {
  return {aggregation.apl_window_ms, aggregation.apl_period_s, aggregation.apl_settle_ms};
}

std::filesystem::path SystemConfig::DataDir() const {
  return sentiment.data_dir.empty() ? DefaultDataDir() : std::filesystem::path(sentiment.data_dir);
}

std::filesystem::path SystemConfig::TrainPath() const {
  return sentiment.train_path.empty() ? DataDir() / "fixtures" / "labeled_300.tsv"
                                      : std::filesystem::path(sentiment.train_path);
}

absl::StatusOr<SystemConfig> ConfigFromJson(const json& j) {
  if (!j.is_object()) return absl::InvalidArgumentError("config must be a JSON object");
  static const std::set<std::string> kSections = {"storage", "buffer",  "spider",
                                                  "source",  "sentiment", "storer",
                                                  "aggregation", "api"};
  for (const auto& [k, v] : j.items()) {
    if (!kSections.count(k)) return absl::InvalidArgumentError(absl::StrCat("unknown config section ", k));
  }
  SystemConfig c;
  std::vector<absl::Status> results;
  results.push_back(Section(j, "storage")
                        .Get("data_dir", c.storage.data_dir)
                        .Get("num_buckets", c.storage.num_buckets)
                        .Get("sync", c.storage.sync)
                        .Get("sync_interval_ms", c.storage.sync_interval_ms)
                        .Finish());
  results.push_back(Section(j, "buffer")
                        .Get("dedup_ttl_s", c.buffer.dedup_ttl_s)
                        .Get("snapshot_path", c.buffer.snapshot_path)
                        .Finish());
  results.push_back(Section(j, "spider")
                        .Get("num_spiders", c.spider.num_spiders)
                        .Get("min_buffer_size", c.spider.min_buffer_size)
                        .Get("buffer_step", c.spider.buffer_step)
                        .Get("laps", c.spider.laps)
                        .Get("sleep_s", c.spider.sleep_s)
                        .Get("langs", c.spider.langs)
                        .Finish());
  results.push_back(Section(j, "source")
                        .Get("kind", c.source.kind)
                        .Get("replay_path", c.source.replay_path)
                        .Get("seed", c.source.seed)
                        .Get("rate_per_s", c.source.rate_per_s)
                        .Get("sentiment_bias", c.source.sentiment_bias)
                        .Get("terms", c.source.terms)
                        .Finish());
  results.push_back(Section(j, "sentiment")
                        .Get("data_dir", c.sentiment.data_dir)
                        .Get("langs", c.sentiment.langs)
                        .Get("model_path", c.sentiment.model_path)
                        .Get("train_path", c.sentiment.train_path)
                        .Get("hints", c.sentiment.hints)
                        .Get("queue_capacity", c.sentiment.queue_capacity)
                        .Get("batch_size", c.sentiment.batch_size)
                        .Get("spout_workers", c.sentiment.spout_workers)
                        .Get("lease_s", c.sentiment.lease_s)
                        .Finish());
  results.push_back(Section(j, "storer")
                        .Get("batch_size", c.storer.batch_size)
                        .Get("poll_interval_ms", c.storer.poll_interval_ms)
                        .Get("lease_s", c.storer.lease_s)
                        .Finish());
  results.push_back(Section(j, "aggregation")
                        .Get("scanners", c.aggregation.scanners)
                        .Get("apl_window_ms", c.aggregation.apl_window_ms)
                        .Get("apl_period_s", c.aggregation.apl_period_s)
                        .Get("apl_settle_ms", c.aggregation.apl_settle_ms)
                        .Get("query_workers", c.aggregation.query_workers)
                        .Get("results_db", c.aggregation.results_db)
                        .Finish());
  results.push_back(Section(j, "api")
                        .Get("host", c.api.host)
                        .Get("port", c.api.port)
                        .Get("threads", c.api.threads)
                        .Get("cors_origin", c.api.cors_origin)
                        .Finish());
  for (const absl::Status& s : results) {
    if (!s.ok()) return s;
  }
  if (absl::Status s = c.Validate(); !s.ok()) return s;
  return c;
}

json ConfigToJson(const SystemConfig& c) {
  return {
      {"storage",
       {{"data_dir", c.storage.data_dir},
        {"num_buckets", c.storage.num_buckets},
        {"sync", c.storage.sync},
        {"sync_interval_ms", c.storage.sync_interval_ms}}},
      {"buffer",
       {{"dedup_ttl_s", c.buffer.dedup_ttl_s}, {"snapshot_path", c.buffer.snapshot_path}}},
      {"spider",
       {{"num_spiders", c.spider.num_spiders},
        {"min_buffer_size", c.spider.min_buffer_size},
        {"buffer_step", c.spider.buffer_step},
        {"laps", c.spider.laps},
        {"sleep_s", c.spider.sleep_s},
        {"langs", c.spider.langs}}},
      {"source",
       {{"kind", c.source.kind},
        {"replay_path", c.source.replay_path},
        {"seed", c.source.seed},
        {"rate_per_s", c.source.rate_per_s},
        {"sentiment_bias", c.source.sentiment_bias},
        {"terms", c.source.terms}}},
      {"sentiment",
       {{"data_dir", c.sentiment.data_dir},
        {"langs", c.sentiment.langs},
        {"model_path", c.sentiment.model_path},
        {"train_path", c.sentiment.train_path},
        {"hints", c.sentiment.hints},
        {"queue_capacity", c.sentiment.queue_capacity},
        {"batch_size", c.sentiment.batch_size},
        {"spout_workers", c.sentiment.spout_workers},
        {"lease_s", c.sentiment.lease_s}}},
      {"storer",
       {{"batch_size", c.storer.batch_size},
        {"poll_interval_ms", c.storer.poll_interval_ms},
        {"lease_s", c.storer.lease_s}}},
      {"aggregation",
       {{"scanners", c.aggregation.scanners},
        {"apl_window_ms", c.aggregation.apl_window_ms},
        {"apl_period_s", c.aggregation.apl_period_s},
        {"apl_settle_ms", c.aggregation.apl_settle_ms},
        {"query_workers", c.aggregation.query_workers},
        {"results_db", c.aggregation.results_db}}},
      {"api",
       {{"host", c.api.host},
        {"port", c.api.port},
        {"threads", c.api.threads},
        {"cors_origin", c.api.cors_origin}}},
  };
}

absl::StatusOr<SystemConfig> LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read config ", path.string()));
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false, /*ignore_comments=*/true);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(path.string(), ": not valid JSON"));
  }
  return ConfigFromJson(j);
}

}  // namespace sentiflow::harness
