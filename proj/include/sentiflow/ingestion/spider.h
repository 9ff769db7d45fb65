// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <cstdint>
#include <span>
#include <stop_token>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "sentiflow/common/clock.h"
#include "sentiflow/ingestion/ingestor.h"
#include "sentiflow/ingestion/post_source.h"

namespace sentiflow::ingestion {

struct SpiderConfig {
  int num_spiders = 1;
  // Posts a spider holds before writing them out.
  int min_buffer_size = 100;
  // Added per spider index to stagger flushes across spiders.
  int buffer_step = 0;
  // Passes over the term list; 0 runs until stopped.
  int laps = 1;
  double sleep_s = 0;
  std::vector<std::string> langs = {"en"};

  // min_buffer_size + buffer_step * spider_id
  size_t FlushThreshold(int spider_id) const;
  absl::Status Validate() const;
};

struct SpiderReport {
  int laps_done = 0;
  uint64_t fetch_calls = 0;
  uint64_t fetched = 0;
  uint64_t ingested = 0;
  uint64_t duplicates = 0;
  uint64_t malformed = 0;
  uint64_t ingest_errors = 0;
  uint64_t source_errors = 0;
  uint64_t flushes = 0;

  SpiderReport& operator+=(const SpiderReport& o);
  nlohmann::json ToJson() const;
};

// Splits terms into n contiguous groups whose sizes differ by at most one.
absl::StatusOr<std::vector<std::vector<std::string>>> PartitionTerms(
    std::span<const std::string> terms, int num_spiders);

// One spider: `laps` passes over its terms, one fetch per term, holding
// fetched posts until its flush threshold is reached and flushing whatever
// remains at the end of each lap. Sleeps sleep_s between laps. Source
// errors are counted and the term is retried on the next lap.
SpiderReport RunSpider(int spider_id, std::span<const std::string> terms,
                       PostSource& source, const SpiderConfig& config,
                       Ingestor& ingestor, const Clock& clock,
                       std::stop_token stop = {});

// Partitions the terms and runs config.num_spiders spiders on their own
// threads; reports are summed at join.
absl::StatusOr<SpiderReport> RunSpiders(std::span<const std::string> terms,
                                        PostSource& source,
                                        const SpiderConfig& config,
                                        Ingestor& ingestor, const Clock& clock,
                                        std::stop_token stop = {});

}  // namespace sentiflow::ingestion
