// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 Sentiflow Contributors

#include "sentiflow/ingestion/ingestor.h"

#include <random>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "sentiflow/buffer/messages.h"
#include "sentiflow/common/log.h"

namespace sentiflow::ingestion {

Ingestor::Ingestor(storage::PostStore& store, buffer::BufferStore& buffers,
                   IngestOptions options)
    : store_(store), buffers_(buffers), options_(std::move(options)) {
  if (options_.run_nonce.empty()) {
    std::random_device rd;
    options_.run_nonce = absl::StrFormat("%08x", rd());
  }
}

std::string Ingestor::NextPostId() {
  return absl::StrCat(options_.run_nonce, "-", counter_.fetch_add(1) + 1);
}

absl::StatusOr<IngestOutcome> Ingestor::Ingest(const RawPost& raw) {
  if (absl::Status st = ValidateRawPost(raw); !st.ok()) return st;
  if (!buffers_.PutIfAbsent(options_.dedup_set, raw.source_id, "",
                            options_.dedup_ttl_s)) {
    return IngestOutcome{IngestStatus::kDuplicate, ""};
  }
  storage::PostRecord record;
  record.post_id = NextPostId();
  record.source_id = raw.source_id;
  record.text = raw.text;
  record.lang = raw.lang;
  record.created_at = raw.created_at;
  record.author = raw.author;
  auto key = store_.Put(record);
  if (!key.ok()) {
    // Let a later fetch of the same post retry.
    buffers_.Ack(options_.dedup_set, raw.source_id);
    return key.status();
  }
  buffers_.Enqueue(options_.input_set, record.post_id,
                   buffer::EncodeInput({record.post_id, record.lang,
                                        record.text, record.created_at}));
  return IngestOutcome{IngestStatus::kIngested, std::move(record.post_id)};
}

}  // namespace sentiflow::ingestion
