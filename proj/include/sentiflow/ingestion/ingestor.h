// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#pragma once

#include <atomic>
#include <string>

#include "absl/status/statusor.h"
#include "sentiflow/buffer/buffer_store.h"
#include "sentiflow/ingestion/post_source.h"
#include "sentiflow/storage/post_store.h"

namespace sentiflow::ingestion {

struct IngestOptions {
  int64_t dedup_ttl_s = buffer::kDefaultDedupTtlS;
  // Prefix of every internal post id; random when empty.
  std::string run_nonce;
  std::string dedup_set = buffer::kDedupSet;
  std::string input_set = buffer::kInputSet;
};

enum class IngestStatus { kIngested, kDuplicate };

struct IngestOutcome {
  IngestStatus status = IngestStatus::kDuplicate;
  std::string post_id;  // set when ingested
};

// Dedup by source id, store, then hand the post to the classifier input
// buffer. Thread-safe.
class Ingestor {
 public:
  Ingestor(storage::PostStore& store, buffer::BufferStore& buffers,
           IngestOptions options = {});

  absl::StatusOr<IngestOutcome> Ingest(const RawPost& raw);

  const std::string& run_nonce() const { return options_.run_nonce; }

 private:
  std::string NextPostId();

  storage::PostStore& store_;
  buffer::BufferStore& buffers_;
  IngestOptions options_;
  std::atomic<uint64_t> counter_{0};
};

}  // namespace sentiflow::ingestion
