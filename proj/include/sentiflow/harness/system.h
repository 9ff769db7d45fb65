// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <chrono>
#include <memory>
#include <thread>

#include "absl/status/statusor.h"
#include "sentiflow/aggregation/apl.h"
#include "sentiflow/aggregation/query_service.h"
#include "sentiflow/api/http_server.h"
#include "sentiflow/buffer/buffer_store.h"
#include "sentiflow/harness/config.h"
#include "sentiflow/ingestion/ingestor.h"
#include "sentiflow/sentiment/topology.h"
#include "sentiflow/storage/post_store.h"
#include "sentiflow/storer/polarity_storer.h"

namespace sentiflow::harness {

struct StartOptions {
  bool source = true;  // run spiders when a source is configured
  bool pipeline = true;
  bool apl = true;
  bool api = true;
};

// Every service of one process, wired per SystemConfig:
//   source -> spiders -> ingestor -> storage + input set
//   input set -> topology -> output set -> storer -> storage
//   storage -> aggregation (APL scheduler, query pool) -> results db -> API
class System {
 public:
  static absl::StatusOr<std::unique_ptr<System>> Create(
      SystemConfig config, const Clock* clock = SystemClock::Default());
  ~System();

  System(const System&) = delete;
  System& operator=(const System&) = delete;

  absl::Status Start(StartOptions options = {});
  // Stops the source, lets the pipeline and storer finish everything
  // already buffered (up to drain_timeout), then stops the rest and
  // flushes storage.
  void Stop(std::chrono::milliseconds drain_timeout = std::chrono::seconds(60));

  // True once the input and output sets are empty and nothing is in flight.
  bool Drained() const;
  bool WaitDrained(std::chrono::milliseconds timeout) const;

  nlohmann::json Stats() const;

  const SystemConfig& config() const { return config_; }
  storage::PostStore& store() { return *store_; }
  buffer::BufferStore& buffers() { return *buffers_; }
  ingestion::Ingestor& ingestor() { return *ingestor_; }
  const sentiment::LanguagePacks& packs() const { return packs_; }
  aggregation::ResultsDb& results() { return *results_; }
  aggregation::QueryService& queries() { return *queries_; }
  aggregation::AplScheduler& apl() { return *apl_; }
  const api::ApiService& api() const { return *api_; }
  // Bound port once the API is running, else 0.
  int api_port() const { return http_ ? http_->port() : 0; }

 private:
  System(SystemConfig config, const Clock* clock);
  absl::Status Init();

  SystemConfig config_;
  const Clock* clock_;

  std::unique_ptr<storage::PostStore> store_;
  std::unique_ptr<buffer::BufferStore> buffers_;
  std::unique_ptr<ingestion::Ingestor> ingestor_;
  sentiment::LanguagePacks packs_;
  std::unique_ptr<aggregation::ResultsDb> results_;
  std::unique_ptr<aggregation::QueryService> queries_;
  std::unique_ptr<aggregation::AplScheduler> apl_;
  std::unique_ptr<api::ApiService> api_;

  std::unique_ptr<ingestion::PostSource> source_;
  std::jthread spiders_;
  std::unique_ptr<sentiment::Topology> topology_;
  std::unique_ptr<storer::PolarityStorer> storer_;
  std::unique_ptr<api::HttpServer> http_;
  bool started_ = false;
};

}  // namespace sentiflow::harness
