// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sentiflow/aggregation/apl.h"
#include "sentiflow/aggregation/query_service.h"
#include "sentiflow/api/api_service.h"
#include "sentiflow/ingestion/spider.h"
#include "sentiflow/ingestion/synthetic_source.h"
#include "sentiflow/sentiment/topology.h"
#include "sentiflow/storage/post_store.h"
#include "sentiflow/storer/polarity_storer.h"

namespace sentiflow::harness {

// Data directory baked in at build time; used when sentiment.data_dir is
// empty.
std::filesystem::path DefaultDataDir();

struct StorageSection {
  std::string data_dir;  // empty keeps posts in memory
  int num_buckets = 16;
  std::string sync = "interval";  // always | interval | never
  int64_t sync_interval_ms = 1000;
};

struct BufferSection {
  int64_t dedup_ttl_s = buffer::kDefaultDedupTtlS;
  // Live buffer records are saved here on shutdown and restored on start.
  std::string snapshot_path;
};

struct SourceSection {
  std::string kind = "none";  // none | synthetic | replay
  std::string replay_path;
  uint64_t seed = 1;
  double rate_per_s = 100;
  double sentiment_bias = 0;
  std::vector<std::string> terms;  // defaults to the synthetic topics
};

struct SentimentSection {
  std::string data_dir;  // resources root with one directory per language
  std::vector<std::string> langs = {"en"};
  std::string model_path;  // trained from train_path when empty
  std::string train_path;  // defaults to <data_dir>/fixtures/labeled_300.tsv
  std::string hints = "1-1-1-1-2-6-2";
  size_t queue_capacity = 1024;
  size_t batch_size = 64;
  int spout_workers = 1;
  int64_t lease_s = 30;
};

struct AggregationSection {
  int scanners = 0;  // 0 = one per bucket
  int64_t apl_window_ms = aggregation::kDefaultAplWindowMs;
  int64_t apl_period_s = 300;
  int64_t apl_settle_ms = 60000;
  int query_workers = 2;
  std::string results_db = ":memory:";
};

struct ApiSection {
  std::string host = "127.0.0.1";
  int port = 8080;
  int threads = 8;
  std::string cors_origin = "*";
};

// Everything one process needs; every field has a default so an empty
// JSON object is a valid config.
struct SystemConfig {
  StorageSection storage;
  BufferSection buffer;
  ingestion::SpiderConfig spider;
  SourceSection source;
  SentimentSection sentiment;
  storer::StorerConfig storer;
  AggregationSection aggregation;
  ApiSection api;

  absl::Status Validate() const;

  storage::StorageConfig StorageConfig() const;
  absl::StatusOr<sentiment::TopologyConfig> TopologyConfig() const;
  aggregation::AplConfig AplConfig() const;
  std::filesystem::path DataDir() const;
  std::filesystem::path TrainPath() const;
};

// Unknown keys are errors so typos do not silently fall back to defaults.
absl::StatusOr<SystemConfig> ConfigFromJson(const nlohmann::json& j);
nlohmann::json ConfigToJson(const SystemConfig& c);
absl::StatusOr<SystemConfig> LoadConfig(const std::filesystem::path& path);

}  // namespace sentiflow::harness
